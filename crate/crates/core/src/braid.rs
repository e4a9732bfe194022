//! Braid words on `n` strands.
//!
//! Letter `i > 0` is the generator `a_i` (a positive crossing between
//! strands `i` and `i + 1`), `-i` its inverse. Words are raw sequences: the
//! only simplification ever applied is the explicit [`BraidWord::free_reduce`].

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::{Rational, rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Argument("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::Semantic(format!(
                "letter {bad} is not a generator of the {strands}-strand braid group"
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    /// Parses whitespace- or comma-separated signed integers. Without an
    /// explicit strand count the word lives on `max|letter| + 1` strands.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if !token.is_empty() {
                let pos = text[offset..].find(token).map_or(offset, |p| p + offset);
                let letter: i32 = token
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("expected a signed integer, got `{token}`")))?;
                if letter == 0 {
                    return Err(Error::parse(pos, "generator index 0 does not exist"));
                }
                letters.push(letter);
                offset = pos + token.len();
            }
        }
        let needed = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        BraidWord::new(strands.unwrap_or(needed), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Algebraic length: the signed letter count.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// The underlying strand permutation: entry `j` is the (0-based) bottom
    /// position of the strand starting at top position `j`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut lengths = Vec::new();
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            let (mut j, mut len) = (start, 0);
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn closure_components(&self) -> usize {
        self.cycle_lengths().len()
    }

    pub fn closes_to_knot(&self) -> bool {
        self.closure_components() == 1
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Order of the permutation in the symmetric group.
    pub fn permutation_order(&self) -> usize {
        self.cycle_lengths().into_iter().fold(1, |acc, l| acc.lcm(&l))
    }

    fn check_strands(&self, other: &BraidWord) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::Argument(format!(
                "strand mismatch: {} vs {}",
                self.strands, other.strands
            )));
        }
        Ok(())
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        self.check_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn power(&self, k: usize) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.repeat(k) }
    }

    /// Negates every letter.
    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `w · b · w⁻¹`.
    pub fn conjugate(w: &BraidWord, b: &BraidWord) -> Result<BraidWord> {
        w.concat(b)?.concat(&w.inverse())
    }

    /// Cancels adjacent pairs `i, -i` until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Positive Markov stabilization: adds a strand and the letter `a_n`.
    pub fn stabilize(&self) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.push(self.strands as i32);
        BraidWord { strands: self.strands + 1, letters }
    }

    /// `a_1 a_2 ⋯ a_{n-1}`.
    pub fn positive_cycle(n: usize) -> Result<BraidWord> {
        if n == 0 {
            return Err(Error::Argument("a braid needs at least one strand".into()));
        }
        Ok(BraidWord { strands: n, letters: (1..n as i32).collect() })
    }

    /// `(a_1 ⋯ a_{n-1})^q`, whose closure is the torus link `T(n, q)`.
    pub fn torus_braid(n: usize, q: usize) -> Result<BraidWord> {
        if n < 2 {
            return Err(Error::Argument(format!("torus braid needs n >= 2, got {n}")));
        }
        Ok(Self::positive_cycle(n)?.power(q))
    }

    /// `Δ² = (a_1 ⋯ a_{n-1})^n`.
    pub fn full_twist(n: usize) -> Result<BraidWord> {
        Self::torus_braid(n, n)
    }

    /// `β_n = (a_1² a_2²)^n` on three strands.
    pub fn family_beta_n(n: usize) -> BraidWord {
        BraidWord { strands: 3, letters: [1, 1, 2, 2].repeat(n) }
    }

    /// `β_n · a_1 a_2`, closing to the knot `K_n`.
    pub fn family_k_n(n: usize) -> BraidWord {
        let mut b = Self::family_beta_n(n);
        b.letters.extend_from_slice(&[1, 2]);
        b
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A product of bands `w · a_i · w⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasipositiveWitness {
    strands: usize,
    bands: Vec<(BraidWord, usize)>,
}

impl QuasipositiveWitness {
    pub fn new(strands: usize, bands: Vec<(BraidWord, usize)>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::Argument("a braid needs at least one strand".into()));
        }
        for (w, i) in &bands {
            if w.strands != strands {
                return Err(Error::Argument(format!(
                    "conjugator on {} strands in a {strands}-strand witness",
                    w.strands
                )));
            }
            if *i == 0 || *i >= strands {
                return Err(Error::Semantic(format!("band generator a_{i} out of range")));
            }
        }
        Ok(QuasipositiveWitness { strands, bands })
    }

    /// Every letter of a positive word as a band with trivial conjugator.
    pub fn from_positive_word(b: &BraidWord) -> Result<Self> {
        if b.letters.iter().any(|&l| l < 0) {
            return Err(Error::Argument("word has negative letters".into()));
        }
        let bands = b
            .letters
            .iter()
            .map(|&l| (BraidWord::identity(b.strands), l as usize))
            .collect();
        Self::new(b.strands, bands)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    pub fn expand(&self) -> BraidWord {
        let mut letters = Vec::new();
        for (w, i) in &self.bands {
            letters.extend_from_slice(&w.letters);
            letters.push(*i as i32);
            letters.extend(w.letters.iter().rev().map(|l| -l));
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `g4 = (l − n + 1) / 2` for the quasi-positive closure.
    pub fn rudolph_genus(&self) -> Result<Rational> {
        let word = self.expand();
        if !word.closes_to_knot() {
            return Err(Error::Contract(format!(
                "witness closes to a {}-component link, not a knot",
                word.closure_components()
            )));
        }
        let l = self.bands.len() as i64;
        Ok(rat(l - self.strands as i64 + 1, 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use proptest::prelude::*;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(BraidWord::identity(3).writhe(), 0);
        assert_eq!(BraidWord::full_twist(3).unwrap().writhe(), 6);
        assert_eq!(BraidWord::parse("1 1 1 2 2 2 2 2 2 2", None).unwrap().writhe(), 10);
        assert_eq!(word(3, &[1, -2, -1]).writhe(), -1);
    }

    #[test]
    fn permutation_examples() {
        let c = word(3, &[1, 2]);
        assert_eq!(c.closure_components(), 1);
        assert!(!c.is_pure());
        assert_eq!(c.permutation_order(), 3);
        let t = c.power(3);
        assert_eq!(t.closure_components(), 3);
        assert!(t.is_pure());
        assert_eq!(BraidWord::torus_braid(3, 7).unwrap().closure_components(), 1);
    }

    #[test]
    fn factorial_powers_are_pure() {
        let samples = [word(3, &[1, -2]), word(4, &[1, 2, 3, -1]), word(5, &[2, 4, -1, 3])];
        for b in samples {
            let fact: usize = (1..=b.strands()).product();
            assert!(b.power(fact).is_pure());
        }
    }

    #[test]
    fn group_operations() {
        let b = word(3, &[1, 2, -1]);
        assert!(b.power(0).is_empty());
        assert!(b.concat(&b.inverse()).unwrap().free_reduce().is_empty());
        assert_eq!(word(3, &[1, 2]).power(7), BraidWord::torus_braid(3, 7).unwrap());
        assert_eq!(b.mirror().letters(), &[-1, -2, 1]);
        assert!(b.concat(&BraidWord::identity(4)).is_err());
        let conj = BraidWord::conjugate(&word(3, &[2]), &word(3, &[1])).unwrap();
        assert_eq!(conj.letters(), &[2, 1, -2]);
        assert_eq!(word(3, &[1, 2, -2, -1, 2]).free_reduce().letters(), &[2]);
    }

    #[test]
    fn families() {
        let d = BraidWord::full_twist(3).unwrap();
        assert_eq!(d.len(), 6);
        assert!(d.is_pure());
        assert_eq!(BraidWord::family_k_n(1).len(), 6);
        assert_eq!(BraidWord::family_beta_n(6).writhe(), 24);
        assert!(BraidWord::family_k_n(5).closes_to_knot());
        assert!(BraidWord::torus_braid(1, 3).is_err());
    }

    #[test]
    fn parse_formats() {
        let b = BraidWord::parse("1, -2,1", None).unwrap();
        assert_eq!((b.strands(), b.letters()), (3, &[1, -2, 1][..]));
        assert_eq!(BraidWord::parse("1", Some(4)).unwrap().strands(), 4);
        assert_eq!(BraidWord::parse("", None).unwrap(), BraidWord::identity(1));
        assert!(matches!(BraidWord::parse("1 x", None), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(BraidWord::parse("1 0", None), Err(Error::Parse { .. })));
        assert!(matches!(BraidWord::parse("3", Some(3)), Err(Error::Semantic(_))));
        assert_eq!(b.to_string(), "1 -2 1");
    }

    #[test]
    fn witnesses() {
        let unknot = QuasipositiveWitness::new(1, vec![]).unwrap();
        assert_eq!(unknot.rudolph_genus().unwrap(), int(0));
        let w = QuasipositiveWitness::from_positive_word(&word(3, &[1, 2])).unwrap();
        assert_eq!(w.rudolph_genus().unwrap(), int(0));
        let t37 = QuasipositiveWitness::from_positive_word(&BraidWord::torus_braid(3, 7).unwrap()).unwrap();
        assert_eq!(t37.band_count(), 14);
        assert_eq!(t37.rudolph_genus().unwrap(), int(6));
        let link = QuasipositiveWitness::from_positive_word(&word(2, &[1, 1])).unwrap();
        assert!(matches!(link.rudolph_genus(), Err(Error::Contract(_))));
        let conj = QuasipositiveWitness::new(3, vec![(word(3, &[2]), 1), (BraidWord::identity(3), 2)]).unwrap();
        assert_eq!(conj.expand().letters(), &[2, 1, -2, 2]);
        assert_eq!(conj.expand().writhe(), 2);
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..6).prop_flat_map(|n| {
            prop::collection::vec((1..n as i32, any::<bool>()), 0..20).prop_map(move |ls| {
                let letters = ls.into_iter().map(|(i, neg)| if neg { -i } else { i }).collect();
                BraidWord::new(n, letters).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn writhe_is_a_homomorphism(a in arb_word(), k in 0usize..4) {
            let b = a.power(k);
            prop_assert_eq!(a.concat(&b).unwrap().writhe(), a.writhe() + b.writhe());
            prop_assert_eq!(a.mirror().writhe(), -a.writhe());
        }

        #[test]
        fn permutation_order_power_is_pure(a in arb_word()) {
            prop_assert!(a.power(a.permutation_order()).is_pure());
        }

        #[test]
        fn torus_components_are_gcd(n in 2usize..8, q in 1usize..30) {
            let b = BraidWord::torus_braid(n, q).unwrap();
            prop_assert_eq!(b.closure_components(), n.gcd(&q));
        }

        #[test]
        fn torus_rudolph_genus(n in 2usize..8, q in 1usize..30) {
            prop_assume!(n.gcd(&q) == 1);
            let w = QuasipositiveWitness::from_positive_word(&BraidWord::torus_braid(n, q).unwrap()).unwrap();
            prop_assert_eq!(w.rudolph_genus().unwrap(), rat(((n - 1) * (q - 1)) as i64, 2));
        }

        #[test]
        fn parse_round_trip(a in arb_word()) {
            prop_assert_eq!(BraidWord::parse(&a.to_string(), Some(a.strands())).unwrap(), a);
        }
    }
}
