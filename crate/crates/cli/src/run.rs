//! Runs one job: cache lookup, computation, optional cross-checks.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_complex::Complex64;
use serde_json::{json, Value};
use untwist::bar::invariants_timed;
use untwist::group::group_from_spec;
use untwist::oracle;
use untwist::torsion::{
    br_n_mod_m, cohomology_mod_m, dw_partition, dw_weight, ext_invariants, homology_exponent, is_cocycle,
    orbifold_partition, phase, subtract_ext, CohomologyClassSet,
};
use untwist::tuples::{commuting_tuple_count, orbit_index, orbit_representatives};
use untwist::zmatrix::{gcd, AbelianInvariants, Int};
use untwist::{h0n, homology, Config, Error, FiniteGroup, Quotient, Z0nMode};

use crate::cache::Cache;
use crate::error::CliError;
use crate::job::{group_fingerprint, job_fingerprint, JobKind, JobRequest, ResultRecord, VERSION};

#[derive(Clone, Debug, Default)]
pub struct Context {
    pub cfg: Config,
    pub cache: Cache,
    pub verify: bool,
    pub paranoid: bool,
}

type Timings = BTreeMap<String, f64>;

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn run(job: &JobRequest, ctx: &Context) -> Result<ResultRecord, CliError> {
    job.validate()?;
    let g = group_from_spec(&job.group, &ctx.cfg.budgets)?;
    run_on(&g, &group_fingerprint(&g), job, ctx)
}

/// Same as [`run`] for an already built group.
pub fn run_on(g: &FiniteGroup, group_fp: &str, job: &JobRequest, ctx: &Context) -> Result<ResultRecord, CliError> {
    job.validate()?;
    let fingerprint = job_fingerprint(group_fp, job);
    let checking = ctx.verify || ctx.paranoid;
    if !checking {
        let t = Instant::now();
        if let Some(mut rec) = ctx.cache.load(&fingerprint) {
            rec.cached = true;
            rec.timings_ms.insert("cache_read".into(), ms(t));
            return Ok(rec);
        }
    }
    let t = Instant::now();
    let (payload, mut timings, verified) = compute(g, job, ctx)?;
    timings.insert("total".into(), ms(t));
    let mut rec = ResultRecord {
        fingerprint,
        version: VERSION.into(),
        subcommand: job.kind.name().into(),
        payload,
        timings_ms: timings,
        verified,
        cached: false,
    };
    if ctx.verify {
        if let Some(old) = ctx.cache.load(&rec.fingerprint) {
            if old.payload != rec.payload {
                return Err(CliError::mismatch(format!("cached payload {} differs from {}", old.payload, rec.payload)));
            }
            rec.verified.push("cache".into());
        }
    }
    ctx.cache.store(&rec);
    Ok(rec)
}

fn compute(g: &FiniteGroup, job: &JobRequest, ctx: &Context) -> Result<(Value, Timings, Vec<String>), CliError> {
    let n = job.degree;
    let cfg = &ctx.cfg;
    let mut verified = Vec::new();
    let mut timings = Timings::new();
    let payload = match job.kind {
        JobKind::Homology | JobKind::H0n | JobKind::Sha => {
            let q = job.kind.quotient().expect("quotient kind");
            let (inv, t) = invariants_timed(g, n, cfg, q)?;
            timings = t;
            if ctx.paranoid && q == Quotient::H0n {
                let all = Config { z0n: Z0nMode::AllTuples, ..cfg.clone() };
                let other = h0n(g, n, &all)?;
                if other != inv {
                    return Err(CliError::mismatch(format!("h0n from all tuples is {other}, from orbits {inv}")));
                }
                verified.push("all-tuples".into());
            }
            if ctx.verify {
                let t = Instant::now();
                verified.extend(oracle::verify_invariants(g, n, cfg, q, &inv)?.into_iter().map(String::from));
                timings.insert("verify".into(), ms(t));
            }
            serde_json::to_value(&inv).expect("invariants serialize")
        }
        JobKind::Tuples => {
            let t = Instant::now();
            let orbits = orbit_representatives(g, n, &cfg.budgets, cfg.exec)?;
            timings.insert("orbits".into(), ms(t));
            if ctx.verify {
                verify_tuples(g, n, cfg, &orbits)?;
                verified.push("brute-force orbits".into());
            }
            Value::Array(
                orbits
                    .iter()
                    .map(|o| json!({"rep": o.rep, "stab": o.stabilizer_order, "orbit": o.orbit_size}))
                    .collect(),
            )
        }
        JobKind::Brn => {
            let m = modulus(g, job, cfg)?;
            let t = Instant::now();
            let h = cohomology_mod_m(g, n, m, cfg)?;
            timings.insert("cohomology".into(), ms(t));
            let t = Instant::now();
            let br = br_n_mod_m(g, n, m, cfg)?;
            timings.insert("untwisted".into(), ms(t));
            let ext = ext_invariants(&homology(g, n - 1, cfg)?, m);
            let hom = subtract_ext(br.invariants(), &ext)?;
            let generators = br.basis().iter().map(|c| h.project(c)).collect::<untwist::Result<Vec<_>>>()?;
            if ctx.verify {
                let full = subtract_ext(h.invariants(), &ext)?;
                expect_eq("Hom(H_n, Z/m)", &full, &hom_into(&homology(g, n, cfg)?, m))?;
                expect_eq("Hom(H_0n, Z/m)", &hom, &hom_into(&h0n(g, n, cfg)?, m))?;
                verified.push("universal coefficients".into());
            }
            let mut obj = serde_json::Map::new();
            obj.insert("modulus".into(), json!(m));
            if let Value::Object(inv) = serde_json::to_value(br.invariants()).expect("invariants serialize") {
                obj.extend(inv);
            }
            obj.insert("ext".into(), serde_json::to_value(&ext).expect("invariants serialize"));
            obj.insert("hom_part".into(), serde_json::to_value(&hom).expect("invariants serialize"));
            obj.insert("cohomology".into(), serde_json::to_value(h.invariants()).expect("invariants serialize"));
            obj.insert("generators".into(), json!(generators));
            Value::Object(obj)
        }
        JobKind::Dw | JobKind::Orbifold => {
            let m = modulus(g, job, cfg)?;
            let t = Instant::now();
            let h = cohomology_mod_m(g, n, m, cfg)?;
            let omega = class_cochain(&h, job.class.as_deref().unwrap_or_default())?;
            timings.insert("cohomology".into(), ms(t));
            let t = Instant::now();
            if job.kind == JobKind::Dw {
                let part = dw_partition(g, n, &omega, cfg)?;
                timings.insert("partition".into(), ms(t));
                if ctx.verify {
                    brute_gate(g, n, cfg)?;
                    if !is_cocycle(g, &omega, cfg)? {
                        return Err(CliError::mismatch("class representative is not a cocycle"));
                    }
                    let full = oracle::dw_partition_full_sum(g, n, &omega)?;
                    if full != part.histogram {
                        return Err(CliError::mismatch("orbit histogram differs from the full tuple sum"));
                    }
                    verified.push("full tuple sum".into());
                }
                serde_json::to_value(&part).expect("partition serializes")
            } else {
                let sectors: BTreeMap<usize, Complex64> = job
                    .sectors
                    .as_ref()
                    .expect("validated")
                    .iter()
                    .map(|(&k, v)| (k, Complex64::new(v[0], v[1])))
                    .collect();
                let z = orbifold_partition(g, n, &omega, &sectors, cfg)?;
                timings.insert("partition".into(), ms(t));
                if ctx.verify {
                    let brute = orbifold_brute(g, n, &omega, &sectors, cfg)?;
                    if (brute - z).norm() > 1e-9 * z.norm().max(1.0) {
                        return Err(CliError::mismatch(format!("full tuple sum gives {brute}, orbit sum {z}")));
                    }
                    verified.push("full tuple sum".into());
                }
                json!({"modulus": m, "value": [z.re, z.im]})
            }
        }
    };
    Ok((payload, timings, verified))
}

/// The requested modulus, else the exponent of `H_n(G)` (at least 2).
fn modulus(g: &FiniteGroup, job: &JobRequest, cfg: &Config) -> Result<u64, CliError> {
    match job.modulus {
        Some(m) => Ok(m),
        None => Ok(homology_exponent(g, job.degree, cfg)?.max(2)),
    }
}

fn class_cochain(h: &CohomologyClassSet, coords: &[u64]) -> Result<untwist::CochainVector, CliError> {
    let k = h.basis().len();
    if coords.len() != k {
        return Err(CliError::Usage(format!(
            "--class needs {k} coordinates for H^{}(G, Z/{}) = {}, got {}",
            h.degree(),
            h.modulus(),
            h.invariants(),
            coords.len()
        )));
    }
    Ok(h.class(coords))
}

/// `Hom(A, Z/m)`.
fn hom_into(a: &AbelianInvariants, m: u64) -> AbelianInvariants {
    let mi = Int::from(m);
    let orders = a.torsion().iter().map(|d| gcd(d, &mi)).chain(std::iter::repeat_n(mi.clone(), a.free_rank()));
    AbelianInvariants::from_orders(orders, 0)
}

fn expect_eq(what: &str, got: &AbelianInvariants, want: &AbelianInvariants) -> Result<(), CliError> {
    if got == want {
        Ok(())
    } else {
        Err(CliError::mismatch(format!("{what}: computed {got}, expected {want}")))
    }
}

/// Brute-force checks scan all of `G^n`; refuse when that exceeds the orbit cap.
fn brute_gate(g: &FiniteGroup, n: usize, cfg: &Config) -> Result<(), CliError> {
    let needed = (g.order() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let cap = cfg.budgets.orbit_cap;
    if needed > cap {
        return Err(Error::BudgetExceeded { what: "brute-force tuple scan", needed, cap }.into());
    }
    Ok(())
}

fn verify_tuples(g: &FiniteGroup, n: usize, cfg: &Config, orbits: &[untwist::TupleOrbit]) -> Result<(), CliError> {
    let total: u128 = orbits.iter().map(|o| o.orbit_size as u128).sum();
    let counted = commuting_tuple_count(g, n, &cfg.budgets)?;
    if total != counted {
        return Err(CliError::mismatch(format!("orbit sizes sum to {total}, tuple count is {counted}")));
    }
    brute_gate(g, n, cfg)?;
    let brute = oracle::tuple_orbits(g, n);
    let sizes: HashMap<&[usize], usize> = brute.iter().map(|o| (o[0].as_slice(), o.len())).collect();
    if sizes.len() != orbits.len() {
        return Err(CliError::mismatch(format!("{} orbits, brute force finds {}", orbits.len(), sizes.len())));
    }
    for o in orbits {
        if sizes.get(o.rep.as_slice()) != Some(&o.orbit_size) || o.orbit_size * o.stabilizer_order != g.order() {
            return Err(CliError::mismatch(format!("orbit of {:?} disagrees with brute force", o.rep)));
        }
    }
    Ok(())
}

fn orbifold_brute(
    g: &FiniteGroup,
    n: usize,
    omega: &untwist::CochainVector,
    sectors: &BTreeMap<usize, Complex64>,
    cfg: &Config,
) -> Result<Complex64, CliError> {
    brute_gate(g, n, cfg)?;
    let orbits = orbit_representatives(g, n, &cfg.budgets, cfg.exec)?;
    let m = omega.modulus();
    let mut z = Complex64::new(0.0, 0.0);
    for t in oracle::commuting_tuples(g, n) {
        let i = orbit_index(g, &orbits, &t).ok_or_else(|| CliError::mismatch(format!("{t:?} lies in no orbit")))?;
        let amp = sectors.get(&i).ok_or(Error::MissingSector(i))?;
        let k = dw_weight(g, omega, &t)?;
        z += phase(k, m) * amp;
    }
    Ok(z / g.order() as f64)
}
