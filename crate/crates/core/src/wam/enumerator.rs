//! Weight enumerators: integer polynomials in a formal variable `W`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `Σ λᵢ Wⁱ`, stored densely by weight with trailing zeros trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightEnum {
    counts: Vec<u64>,
}

impl WeightEnum {
    pub fn zero() -> WeightEnum {
        WeightEnum { counts: Vec::new() }
    }

    pub fn one() -> WeightEnum {
        WeightEnum::monomial(0)
    }

    /// `W^w`
    pub fn monomial(w: usize) -> WeightEnum {
        let mut counts = vec![0; w + 1];
        counts[w] = 1;
        WeightEnum { counts }
    }

    pub fn from_counts(mut counts: Vec<u64>) -> WeightEnum {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        WeightEnum { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn coeff(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.counts.len().checked_sub(1)
    }

    /// Value at `W = 1`: the number of enumerated words.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn add_monomial(&mut self, w: usize) {
        if self.counts.len() <= w {
            self.counts.resize(w + 1, 0);
        }
        self.counts[w] += 1;
    }

    pub fn add(&self, other: &WeightEnum) -> WeightEnum {
        let n = self.counts.len().max(other.counts.len());
        WeightEnum::from_counts((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn add_assign(&mut self, other: &WeightEnum) {
        if self.counts.len() < other.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn mul(&self, other: &WeightEnum) -> WeightEnum {
        if self.is_zero() || other.is_zero() {
            return WeightEnum::zero();
        }
        let mut out = vec![0u64; self.counts.len() + other.counts.len() - 1];
        for (i, &a) in self.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.counts.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        WeightEnum::from_counts(out)
    }

    /// Nonzero `(weight, count)` pairs in ascending weight.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c != 0).map(|(w, &c)| (w, c))
    }

    /// True for a single term `W^w` with coefficient one.
    pub fn is_single_monomial(&self) -> bool {
        self.terms().count() == 1 && self.terms().all(|(_, c)| c == 1)
    }

    /// Parses the rendering produced by `Display`, e.g. `1+3W^2+W^6`.
    pub fn parse(src: &str) -> Option<WeightEnum> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Some(WeightEnum::zero());
        }
        let mut out = WeightEnum::zero();
        for term in s.split('+') {
            let (coef, w) = match term.find('W') {
                None => (term, 0),
                Some(pos) => {
                    let rest = &term[pos + 1..];
                    let w = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
                    (&term[..pos], w)
                }
            };
            let c: u64 = if coef.is_empty() { 1 } else { coef.parse().ok()? };
            out = out.add(&WeightEnum::from_counts({
                let mut v = vec![0; w + 1];
                v[w] = c;
                v
            }));
        }
        Some(out)
    }
}

impl fmt::Display for WeightEnum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in self.terms() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (w, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("W")?,
                (1, c) => write!(f, "{c}W")?,
                (w, 1) => write!(f, "W^{w}")?,
                (w, c) => write!(f, "{c}W^{w}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeightEnum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for WeightEnum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<usize, u64> = self.terms().collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightEnum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<WeightEnum, D::Error> {
        let map = BTreeMap::<usize, u64>::deserialize(d)?;
        let len = map.keys().next_back().map_or(0, |&w| w + 1);
        let mut counts = vec![0; len];
        for (w, c) in map {
            counts[w] = c;
        }
        Ok(WeightEnum::from_counts(counts))
    }
}
