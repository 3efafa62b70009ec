//! Batch verification over enumerated posets, with JSONL records.

use super::enumerate::{enumerate_posets, EnumerateOptions};
use crate::algebra::LiePosetAlgebra;
use crate::error::Result;
use crate::frobenius::{combinatorial_frobenius, is_frobenius, Verdict};
use crate::index::{formula_index, IndexCertificate, IndexConfig, Status};
use crate::poset::{Poset, PosetJson, Statistics};
use crate::spectrum::{ad_spectrum, draw_frobenius_functional, principal_element, AdSpectrum};
use crate::topology::order_complex;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Formulas,
    Frobenius,
    Homology,
    Spectrum,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Formulas, Check::Frobenius, Check::Homology, Check::Spectrum];

    pub fn parse(s: &str) -> Option<Check> {
        match s {
            "formulas" => Some(Check::Formulas),
            "frobenius" => Some(Check::Frobenius),
            "homology" => Some(Check::Homology),
            "spectrum" => Some(Check::Spectrum),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub n_max: usize,
    pub checks: Vec<Check>,
    pub index: IndexConfig,
    pub connected_only: bool,
    pub max_height: Option<usize>,
    pub allow_large: bool,
    /// Record per-poset wall time (the only nondeterministic field).
    pub timing: bool,
}

impl SweepOptions {
    pub fn new(n_max: usize, checks: &[Check], seed: u64) -> Self {
        SweepOptions {
            n_max,
            checks: checks.to_vec(),
            index: IndexConfig::with_seed(seed),
            connected_only: false,
            max_height: None,
            allow_large: false,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    /// Canonical form.
    pub poset: PosetJson,
    pub height: usize,
    pub statistics: Statistics,
    pub formula: Option<i64>,
    pub certificate: IndexCertificate,
    pub verdict: Verdict,
    pub betti: Option<Vec<usize>>,
    /// `[numerator, denominator, multiplicity]` of the principal spectrum.
    pub spectrum: Option<Vec<[i64; 3]>>,
    pub timing_us: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: Check,
    pub poset: PosetJson,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub posets: usize,
    pub checks: BTreeMap<Check, Tally>,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Outcome {
    record: AtlasRecord,
    results: Vec<(Check, Option<String>)>,
}

fn spectrum_triples(s: &AdSpectrum) -> Option<Vec<[i64; 3]>> {
    s.multiset()?
        .iter()
        .map(|(l, m)| Some([l.numer().to_i64()?, l.denom().to_i64()?, *m as i64]))
        .collect()
}

fn examine(p: &Poset, o: &SweepOptions) -> Outcome {
    let start = Instant::now();
    let alg = LiePosetAlgebra::type_a(p, true);
    let rep = is_frobenius(&alg, &o.index);
    let cert = rep.certificate;
    let h = p.height();
    let formula = formula_index(p).ok();
    let want = |c: Check| o.checks.contains(&c);
    let frob = rep.verdict == Verdict::Frobenius;
    let mut results = vec![];

    if want(Check::Formulas) && h <= 2 {
        let detail = match (cert.status, formula) {
            (Status::Exact, Some(f)) if f == cert.lower as i64 => None,
            _ => Some(format!("formula {formula:?}, certificate [{}, {}]", cert.lower, cert.upper)),
        };
        results.push((Check::Formulas, detail));
    }
    if want(Check::Frobenius) && h <= 2 {
        let comb = combinatorial_frobenius(p).expect("height at most 2");
        let detail = if rep.verdict == Verdict::Undetermined {
            Some("undetermined verdict".to_string())
        } else if comb != frob {
            Some(format!("combinatorial {comb}, certified {frob}"))
        } else if frob && !p.is_connected() {
            Some("Frobenius but disconnected".to_string())
        } else {
            None
        };
        results.push((Check::Frobenius, detail));
    }
    let betti = want(Check::Homology).then(|| order_complex(p).betti(2));
    if let Some(b) = &betti {
        let comps = p.components().len();
        let detail = if b[0] != comps {
            Some(format!("b0 = {} but {comps} components", b[0]))
        } else if frob && h <= 2 && (b[1] != 0 || b[2] != 0) {
            Some(format!("Frobenius with betti {b:?}"))
        } else {
            None
        };
        results.push((Check::Homology, detail));
    }
    let mut spectrum = None;
    if want(Check::Spectrum) && frob {
        let s = draw_frobenius_functional(&alg, &o.index)
            .and_then(|f| principal_element(&alg, &f))
            .and_then(|x| ad_spectrum(&alg, &x));
        let detail = match &s {
            Err(e) => Some(e.to_string()),
            Ok(s) => {
                spectrum = spectrum_triples(s);
                let d = alg.dim();
                let half = match s.multiset() {
                    Some([(z, a), (one, b)]) => {
                        z.numer().to_i64() == Some(0)
                            && *one == crate::linalg::q(1)
                            && 2 * a == d
                            && 2 * b == d
                    }
                    _ => d == 0,
                };
                if h > 2 || half {
                    None
                } else {
                    Some(format!("spectrum {spectrum:?}"))
                }
            }
        };
        if h <= 2 {
            results.push((Check::Spectrum, detail));
        }
    }
    let canon = p.canonical_form();
    Outcome {
        record: AtlasRecord {
            poset: canon.to_json(),
            height: h,
            statistics: canon.statistics(),
            formula,
            certificate: cert,
            verdict: rep.verdict,
            betti,
            spectrum,
            timing_us: o.timing.then(|| start.elapsed().as_micros() as u64),
        },
        results,
    }
}

/// Runs the requested checks on every poset with at most `n_max` elements,
/// writing one JSON record per poset to `sink` in canonical-key order.
pub fn sweep(o: &SweepOptions, mut sink: Option<&mut dyn Write>) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for c in &o.checks {
        report.checks.insert(*c, Tally::default());
    }
    for n in 1..=o.n_max {
        let eo = EnumerateOptions {
            dedup: true,
            connected_only: o.connected_only,
            max_height: o.max_height,
            allow_large: o.allow_large,
            height: None,
        };
        let posets = enumerate_posets(n, &eo)?;
        let outcomes: Vec<Outcome> = posets.par_iter().map(|p| examine(p, o)).collect();
        for out in outcomes {
            report.posets += 1;
            for (c, detail) in out.results {
                let t = report.checks.get_mut(&c).expect("requested check");
                t.checked += 1;
                if let Some(detail) = detail {
                    t.failed += 1;
                    report.failures.push(Failure { check: c, poset: out.record.poset.clone(), detail });
                }
            }
            if let Some(w) = sink.as_deref_mut() {
                let line = serde_json::to_string(&out.record).map_err(|e| crate::Error::Invalid(e.to_string()))?;
                writeln!(w, "{line}").map_err(|e| crate::Error::Invalid(format!("write failed: {e}")))?;
            }
        }
    }
    Ok(report)
}
