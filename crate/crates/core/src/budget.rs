/// Size limits shared by every computation.
///
/// The defaults keep the bar complex within desk scale: degree 2 for
/// groups up to order ~64, degree 3 up to ~24, degrees 4-5 up to ~8.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Largest group order accepted by constructors.
    pub order_cap: usize,
    /// Groups up to this order get a full multiplication table.
    pub table_cap: usize,
    /// Largest number of commuting-tuple orbits to materialize.
    pub orbit_cap: u128,
    /// Largest number of memoized subgroup states in tuple counting.
    pub count_cap: u128,
    /// Largest bar basis size `(|G|-1)^k` of any degree touched.
    pub bar_cells: u128,
    /// Largest number of classes enumerated in per-class reports.
    pub class_enum_cap: u128,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            order_cap: 20_000,
            table_cap: 2048,
            orbit_cap: 10_000_000,
            count_cap: 1_000_000,
            bar_cells: 300_000,
            class_enum_cap: 10_000,
        }
    }
}

/// Everything a computation needs besides its inputs.
#[derive(Clone, Debug, Default)]
pub struct Config {
    pub budgets: Budgets,
    pub exec: crate::par::Exec,
    pub z0n: crate::bar::Z0nMode,
}

impl Config {
    pub fn with_exec(exec: crate::par::Exec) -> Self {
        Config { exec, ..Config::default() }
    }
}
