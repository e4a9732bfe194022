//! Two-generator numerical semigroups and their counting functions
//! `H(i) = #{s ∈ S : s < i}`.

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountingFunction {
    genus: u64,
    // H(0), ..., H(2g)
    values: Vec<u64>,
}

impl CountingFunction {
    /// Builds `H` from its values on `[0, 2g]`; the genus is read off the
    /// length. Fails unless all counting-function invariants hold.
    pub fn from_values(values: Vec<u64>) -> Result<Self> {
        if values.len() % 2 == 0 {
            return Err(Error::Argument(format!(
                "a counting function on [0, 2g] has an odd number of values, got {}",
                values.len()
            )));
        }
        let h = CountingFunction { genus: (values.len() as u64 - 1) / 2, values };
        h.validate().map_err(Error::Argument)?;
        Ok(h)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        let g = self.genus;
        if self.values.len() as u64 != 2 * g + 1 {
            return Err(format!("expected {} values for genus {g}", 2 * g + 1));
        }
        if self.values[0] != 0 {
            return Err("H(0) must be 0".into());
        }
        if g > 0 && self.values[1] != 1 {
            return Err("0 lies in every semigroup, so H(1) must be 1".into());
        }
        if self.values.windows(2).any(|w| w[1] < w[0] || w[1] - w[0] > 1) {
            return Err("H must increase by steps of 0 or 1".into());
        }
        if self.values[2 * g as usize] != g {
            return Err(format!("H(2g) must equal g = {g}"));
        }
        let flats = self.values.windows(2).filter(|w| w[0] == w[1]).count() as u64;
        if flats != g {
            return Err(format!("expected {g} gaps, found {flats}"));
        }
        Ok(())
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// `H(0), …, H(2g)`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `H(i)` for any integer `i`: 0 below 0 and `i − g` from `2g` on.
    pub fn at(&self, i: i64) -> i64 {
        let g = self.genus as i64;
        if i <= 0 {
            0
        } else if i >= 2 * g {
            i - g
        } else {
            self.values[i as usize] as i64
        }
    }

    /// The integers missing from the semigroup.
    pub fn gaps(&self) -> Vec<u64> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(i, _)| i as u64)
            .collect()
    }

    /// The counting function of the unknot (the semigroup of all
    /// nonnegative integers); the identity for [`min_convolve`].
    pub fn trivial() -> Self {
        CountingFunction { genus: 0, values: vec![0] }
    }
}

/// Counting function of the semigroup generated by coprime `a, b ≥ 1`,
/// by sieving `xa + yb` over `[0, 2g]`.
pub fn torus_counting(a: u64, b: u64) -> Result<CountingFunction> {
    if a == 0 || b == 0 {
        return Err(Error::Argument("semigroup generators must be positive".into()));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::Argument(format!("generators {a} and {b} are not coprime")));
    }
    let genus = (a - 1) * (b - 1) / 2;
    let top = 2 * genus as usize;
    let mut member = vec![false; top + 1];
    let (a, b) = (a as usize, b as usize);
    for x in (0..=top).step_by(a) {
        for s in (x..=top).step_by(b) {
            member[s] = true;
        }
    }
    let mut values = Vec::with_capacity(top + 1);
    let mut count = 0;
    for &is_member in &member {
        values.push(count);
        if is_member {
            count += 1;
        }
    }
    let h = CountingFunction { genus, values };
    h.validate().map_err(Error::Internal)?;
    Ok(h)
}

/// `H(i) = min_j { H1(i − j) + H2(j) }`, the counting-function operation
/// of a blowup. The result has genus `g1 + g2`.
pub fn min_convolve(h1: &CountingFunction, h2: &CountingFunction) -> Result<CountingFunction> {
    let (g1, g2) = (h1.genus as i64, h2.genus as i64);
    let genus = g1 + g2;
    let values = (0..=2 * genus)
        .map(|i| {
            let lo = (i - 2 * g1).max(0);
            let hi = i.min(2 * g2);
            (lo..=hi).map(|j| h1.at(i - j) + h2.at(j)).min().expect("window is nonempty") as u64
        })
        .collect();
    let h = CountingFunction { genus: genus as u64, values };
    h.validate()
        .map_err(|e| Error::Internal(format!("min-convolution broke a counting-function invariant: {e}")))?;
    Ok(h)
}

/// The blowup factors of `⟨a, b⟩` for coprime `a < b`:
/// `⟨min(a, b−a), max(a, b−a)⟩` and `⟨a, a+1⟩`.
pub fn blowup_factors(a: u64, b: u64) -> Result<(CountingFunction, CountingFunction)> {
    if a == 0 || a >= b {
        return Err(Error::Argument(format!("blowup needs 1 <= a < b, got ({a}, {b})")));
    }
    let d = b - a;
    Ok((torus_counting(a.min(d), a.max(d))?, torus_counting(a, a + 1)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn torus_examples() {
        assert_eq!(torus_counting(1, 7).unwrap(), CountingFunction::trivial());
        let h = torus_counting(2, 3).unwrap();
        assert_eq!((h.genus(), h.values()), (1, &[0, 1, 1][..]));
        let h = torus_counting(3, 4).unwrap();
        assert_eq!((h.genus(), h.values()), (3, &[0, 1, 1, 1, 2, 3, 3][..]));
        assert_eq!(h.gaps(), vec![1, 2, 5]);
        assert_eq!(torus_counting(4, 3).unwrap(), h);
        assert!(matches!(torus_counting(4, 6), Err(Error::Argument(_))));
    }

    #[test]
    fn boundary_extension() {
        let h = torus_counting(3, 4).unwrap();
        assert_eq!(h.at(-5), 0);
        assert_eq!(h.at(6), 3);
        assert_eq!(h.at(10), 7);
    }

    #[test]
    fn convolution_examples() {
        let h = torus_counting(3, 5).unwrap();
        assert_eq!(min_convolve(&h, &CountingFunction::trivial()).unwrap(), h);
        let t = torus_counting(2, 3).unwrap();
        let sum = min_convolve(&t, &t).unwrap();
        assert_eq!((sum.genus(), sum.values()), (2, &[0, 1, 1, 2, 2][..]));
        let blown = min_convolve(&torus_counting(3, 5).unwrap(), &torus_counting(3, 4).unwrap()).unwrap();
        assert_eq!(blown, torus_counting(3, 8).unwrap());
    }

    #[test]
    fn blowup_recursion_exhaustive() {
        for b in 2..=25u64 {
            for a in 1..b {
                if a.gcd(&b) != 1 {
                    continue;
                }
                let (h1, h2) = blowup_factors(a, b).unwrap();
                let h = min_convolve(&h1, &h2).unwrap();
                assert_eq!(h, torus_counting(a, b).unwrap(), "blowup of ({a}, {b})");
            }
        }
    }

    #[test]
    fn from_values_validates() {
        assert!(CountingFunction::from_values(vec![0, 1, 1]).is_ok());
        assert!(CountingFunction::from_values(vec![0, 1]).is_err());
        assert!(CountingFunction::from_values(vec![0, 0, 1]).is_err());
        assert!(CountingFunction::from_values(vec![1, 1, 1]).is_err());
    }

    fn arb_counting() -> impl Strategy<Value = CountingFunction> {
        (1u64..12, 1u64..12)
            .prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
            .prop_map(|(a, b)| torus_counting(a, b).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn commutative(h1 in arb_counting(), h2 in arb_counting()) {
            prop_assert_eq!(min_convolve(&h1, &h2).unwrap(), min_convolve(&h2, &h1).unwrap());
        }

        #[test]
        fn associative(h1 in arb_counting(), h2 in arb_counting(), h3 in arb_counting()) {
            let left = min_convolve(&min_convolve(&h1, &h2).unwrap(), &h3).unwrap();
            let right = min_convolve(&h1, &min_convolve(&h2, &h3).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn genus_is_additive(h1 in arb_counting(), h2 in arb_counting()) {
            prop_assert_eq!(min_convolve(&h1, &h2).unwrap().genus(), h1.genus() + h2.genus());
        }
    }
}
