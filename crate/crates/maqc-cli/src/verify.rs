//! The three-route verification sweep.
//!
//! For each random instance, the Hochster decomposition, the cellular
//! cochain models and the finite algebra model must agree: dimensions over
//! `Z₂` (all three routes, both models), dimensions over `Q` and full
//! group invariants over `Z` (Hochster vs. cellular).  One agreement is
//! tallied per (instance, coefficient ring); a disagreement records the
//! instance JSON as a minimal reproducer.
//!
//! Instances fan out across threads; results are merged by instance index,
//! so reports are deterministic for a fixed seed.

use std::collections::BTreeMap;

use maqc_core::cellular::{CellComplex, CellModel};
use maqc_core::dga::build_r;
use maqc_core::hochster::{Decomposition, Model};
use maqc_core::homology::{cohomology, CoefficientRing, Group};
use maqc_core::sample::{random_complex, Rng};
use maqc_core::{ColoredComplex, SphereDims};

use crate::input::complex_to_json;
use crate::report::VerifyJson;

pub struct SweepOutcome {
    pub agreements: usize,
    pub checks: usize,
    pub failures: Vec<serde_json::Value>,
    pub integral_dga_matches: usize,
}

struct InstanceOutcome {
    ring_ok: BTreeMap<CoefficientRing, bool>,
    integral_dga_match: bool,
    reproducer: Option<serde_json::Value>,
}

fn totals_of(groups: &BTreeMap<i32, Group>) -> Vec<(i32, Group)> {
    groups
        .iter()
        .filter(|(_, g)| !g.is_zero())
        .map(|(&q, g)| (q, g.clone()))
        .collect()
}

fn groups_agree(a: &[(i32, Group)], b: &[(i32, Group)]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b.iter())
            .all(|((qa, ga), (qb, gb))| qa == qb && ga.isomorphic(gb))
}

fn check_instance(cc: &ColoredComplex) -> InstanceOutcome {
    let dec = Decomposition::new(cc);
    let cell_real = CellComplex::build(cc, CellModel::Real).to_cochain_complex();
    let cell_torus = CellComplex::build(cc, CellModel::Torus).to_cochain_complex();

    let mut ring_ok = BTreeMap::new();
    for ring in CoefficientRing::ALL {
        let mut ok = true;
        for (model, cell) in [(Model::Real, &cell_real), (Model::Torus, &cell_torus)] {
            let table = dec.table(&model, ring).expect("hochster table");
            let hoch = totals_of(&table.totals());
            let cell_h = cohomology(cell, ring).expect("cellular cohomology");
            let cell_groups = totals_of(&cell_h.by_degree);
            if !groups_agree(&hoch, &cell_groups) {
                ok = false;
            }
            if ring == CoefficientRing::Z2 {
                let dims = match model {
                    Model::Real => Some(SphereDims(vec![0; cc.k()])),
                    _ => None,
                };
                let rc = build_r(cc, dims.as_ref()).expect("R complex");
                let dga: Vec<(i32, Group)> = rc
                    .betti_mod2()
                    .into_iter()
                    .filter(|&(_, b)| b > 0)
                    .map(|(q, b)| (q, Group::free(b)))
                    .collect();
                if !groups_agree(&hoch, &dga) {
                    ok = false;
                }
            }
        }
        ring_ok.insert(ring, ok);
    }

    // Informational experiment: integral cohomology of the finite algebra
    // model versus the cellular torus model.  Observed, never asserted.
    let rc = build_r(cc, None).expect("R complex");
    let dga_z = cohomology(&rc.to_cochain_complex(), CoefficientRing::Z);
    let cell_z = cohomology(&cell_torus, CoefficientRing::Z);
    let integral_dga_match = match (dga_z, cell_z) {
        (Ok(a), Ok(b)) => groups_agree(&totals_of(&a.by_degree), &totals_of(&b.by_degree)),
        _ => false,
    };

    let all_ok = ring_ok.values().all(|&ok| ok);
    InstanceOutcome {
        ring_ok,
        integral_dga_match,
        reproducer: if all_ok { None } else { Some(complex_to_json(cc)) },
    }
}

/// Runs the sweep: `trials` seeded instances on at most `max_vertices`
/// vertices, fanned out across threads.
pub fn sweep(seed: u64, trials: usize, max_vertices: usize) -> SweepOutcome {
    let mut rng = Rng::new(seed);
    let instances: Vec<ColoredComplex> = (0..trials)
        .map(|_| random_complex(&mut rng, max_vertices))
        .collect();

    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(trials.max(1));
    let mut outcomes: Vec<Option<InstanceOutcome>> = Vec::new();
    outcomes.resize_with(trials, || None);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<InstanceOutcome>>> =
        (0..trials).map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= trials {
                    break;
                }
                let outcome = check_instance(&instances[i]);
                *slots[i].lock().expect("slot lock") = Some(outcome);
            });
        }
    });
    for (i, slot) in slots.into_iter().enumerate() {
        outcomes[i] = slot.into_inner().expect("slot lock");
    }

    let mut agreements = 0;
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut integral_dga_matches = 0;
    for outcome in outcomes.into_iter().map(|o| o.expect("outcome filled")) {
        for ok in outcome.ring_ok.values() {
            checks += 1;
            if *ok {
                agreements += 1;
            }
        }
        if outcome.integral_dga_match {
            integral_dga_matches += 1;
        }
        if let Some(repro) = outcome.reproducer {
            failures.push(repro);
        }
    }
    SweepOutcome {
        agreements,
        checks,
        failures,
        integral_dga_matches,
    }
}

impl SweepOutcome {
    pub fn into_json(self, seed: u64, trials: usize, max_vertices: usize) -> VerifyJson {
        VerifyJson {
            seed,
            trials,
            max_vertices,
            agreements: self.agreements,
            checks: self.checks,
            summary: format!("{}/{} route agreements", self.agreements, self.checks),
            failures: self.failures,
            experimental_integral_dga_matches: self.integral_dga_matches,
        }
    }
}
