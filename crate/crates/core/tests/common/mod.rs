//! Shared helpers for the integration suites: an unpruned reference
//! enumerator for cap curves and seeded random input generators.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reebkit::curves::{self, CapCurve, CurveClass, CurveQuery};
use reebkit::reeb::{self, SmoothingPolicy};
use reebkit::{Domain, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive rational with numerator in `1..=num_max` over `den`.
pub fn random_rat(rng: &mut ChaCha8Rng, num_max: i64, den: i64) -> Rat {
    Rat::new(rng.gen_range(1..=num_max), den)
}

/// Ellipsoid with `n` sorted coefficients drawn from `1/den..=num_max/den`.
pub fn random_ellipsoid(rng: &mut ChaCha8Rng, n: usize, num_max: i64, den: i64) -> Domain {
    let mut coeffs: Vec<Rat> = (0..n).map(|_| random_rat(rng, num_max, den)).collect();
    coeffs.sort();
    Domain::ellipsoid(coeffs).expect("positive coefficients")
}

/// Canonical comparison key: area plus the sorted end labels.
pub fn key_set(found: &[CapCurve]) -> BTreeSet<(Rat, Vec<String>)> {
    found
        .iter()
        .map(|c| {
            let labels = c.class.negative_ends.iter().map(|o| o.to_string()).collect();
            (c.area.clone(), labels)
        })
        .collect()
}

/// Reference enumeration of cap curve classes: a plain odometer over end
/// multiplicity vectors with per-orbit caps from the action budget, no
/// sorted-order pruning, candidates walked in reverse action order. Slower
/// than the library search by design; used only to cross-check it.
pub fn brute_force_cap_curves(
    domain: &Domain,
    r: &Rat,
    query: &CurveQuery,
) -> BTreeSet<(Rat, Vec<String>)> {
    let policy = SmoothingPolicy::InfinitesimalEpsilon;
    let budget = Rat::from(query.degree) * r;
    let t_min = &budget - &query.area_max;
    let t_max = (&budget - &query.area_min).min(budget.clone());
    let mut pool: Vec<(reebkit::ReebOrbit, Rat)> = reeb::enumerate_orbits(domain, &budget, &policy)
        .expect("enumerable boundary")
        .into_iter()
        .filter(|e| e.action < budget)
        .map(|e| (e.orbit, e.action))
        .collect();
    pool.reverse();
    // Largest k with k * action < budget, found by repeated addition.
    let caps: Vec<u32> = pool
        .iter()
        .map(|(_, action)| {
            let mut k = 0u32;
            let mut acc = action.clone();
            while acc < budget {
                k += 1;
                acc = acc + action;
            }
            k
        })
        .collect();
    let cap_totals: Vec<Rat> =
        pool.iter().zip(&caps).map(|((_, action), cap)| Rat::from(*cap) * action).collect();
    let mut counts = vec![0u32; pool.len()];
    let mut total = Rat::zero();
    let mut out = BTreeSet::new();
    loop {
        if total >= t_min && total <= t_max && total < budget {
            let mut ends = Vec::new();
            for ((orbit, _), count) in pool.iter().zip(&counts) {
                for _ in 0..*count {
                    ends.push(orbit.clone());
                }
            }
            let keep = query
                .constrained_end
                .as_ref()
                .is_none_or(|fixed| ends.contains(fixed));
            if keep {
                let class = CurveClass::cap(domain.clone(), r.clone(), query.degree, ends)
                    .expect("ends live on the boundary");
                let index = curves::virtual_index(&class).expect("index defined");
                if query.index_min.as_ref().is_none_or(|min| &index >= min) {
                    let area = curves::curve_area(&class).expect("cap class");
                    let labels =
                        class.negative_ends.iter().map(|o| o.to_string()).collect();
                    out.insert((area, labels));
                }
            }
        }
        // Odometer step, updating the running action total.
        let mut i = 0;
        loop {
            if i == counts.len() {
                return out;
            }
            if counts[i] < caps[i] {
                counts[i] += 1;
                total = total + &pool[i].1;
                break;
            }
            total = total - &cap_totals[i];
            counts[i] = 0;
            i += 1;
        }
    }
}
