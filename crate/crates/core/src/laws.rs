//! BS(2,1)⁺ viewed as a one-object category: monoid laws as a report.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::category::{LawCheck, VerificationReport};
use crate::degree::{BsWord, Degree, Letter};

/// Words `a^N b^M` with `N <= max_n`, `M <= max_m`.
pub fn small_words(max_n: u64, max_m: u64) -> Vec<BsWord> {
    (0..=max_n)
        .flat_map(|n| (0..=max_m).map(move |m| BsWord::new(n, m)))
        .collect()
}

/// Folds random letter strings of length up to 24.
pub fn random_words(count: usize, seed: u64) -> Vec<BsWord> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=24);
            let letters: Vec<Letter> = (0..len)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Letter::A
                    } else {
                        Letter::B
                    }
                })
                .collect();
            BsWord::fold(&letters)
        })
        .collect()
}

/// Identity and associativity over `random` seeded words plus every word
/// with `N <= 3`, `M <= 8`; the single object makes `r = s = ⋆` automatic.
pub fn bs_category_axioms(random: usize, seed: u64) -> VerificationReport {
    let small = small_words(3, 8);
    let mut pool = random_words(random, seed);
    pool.extend(small.iter().cloned());
    let e = BsWord::identity();
    let mut report = VerificationReport::new(0, pool.len());

    let mut objects = LawCheck::new("single-object");
    for _ in &pool {
        objects.record(true, String::new);
    }
    report.push(objects);

    let mut identity = LawCheck::new("identity");
    for w in &pool {
        identity.record(e.mul(w) == *w, || format!("e·{w} != {w}"));
        identity.record(w.mul(&e) == *w, || format!("{w}·e != {w}"));
    }
    report.push(identity);

    let mut assoc = LawCheck::new("associativity");
    for x in &small {
        for y in &small {
            let xy = x.mul(y);
            for z in &small {
                assoc.record(xy.mul(z) == x.mul(&y.mul(z)), || format!("({x}{y}){z}"));
            }
        }
    }
    for t in pool.chunks_exact(3) {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        assoc.record(x.mul(y).mul(z) == x.mul(&y.mul(z)), || {
            format!("({x}{y}){z}")
        });
    }
    report.push(assoc);
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axioms_hold() {
        let report = bs_category_axioms(1000, 7);
        assert!(report.passed, "{report}");
        assert_eq!(report.laws[2].instances, 36 * 36 * 36 + (1000 + 36) / 3);
    }
}
