//! Weight adjacency matrices of state-space systems.
//!
//! `Λ_{X,Y}` enumerates the output weights `wt(XC + uD)` over all inputs `u`
//! with `Y = XA + uB`. States are indexed lexicographically over the field's
//! element order, first coordinate most significant.

mod enumerator;

pub use enumerator::WeightEnum;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{enumerate_invertible, gl_order, weight, Automorphism, Elem, Field, FieldMatrix};
use crate::polymat::PolyMatrix;
use crate::realization::StateSpace;
use crate::text::parse_field;

/// Default cap on the number of states `q^δ`.
pub const DEFAULT_MAX_STATES: usize = 4096;

/// Sparse `q^δ × q^δ` matrix of weight enumerators; absent entries are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Wam {
    field: Field,
    delta: usize,
    rows: Vec<BTreeMap<usize, WeightEnum>>,
}

impl std::fmt::Debug for Wam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render_table())
    }
}

fn state_count(field: &Field, delta: usize, cap: usize) -> Result<usize> {
    match field.vector_count(delta) {
        Some(s) if s <= cap => Ok(s),
        other => Err(Error::CapExceeded {
            size: other.map_or(u128::MAX, |s| s as u128),
            cap: cap as u128,
        }),
    }
}

/// All vectors `x·M` for `x` in lexicographic order.
fn images(field: &Field, m: &FieldMatrix, count: usize) -> Vec<Vec<Elem>> {
    (0..count).map(|i| m.left_apply(&field.vector_from_index(i, m.rows()))).collect()
}

fn add_vec(field: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn compute_wam(sys: &StateSpace, max_states: usize) -> Result<Wam> {
    let f = sys.field();
    let states = state_count(f, sys.delta(), max_states)?;
    let inputs = f
        .vector_count(sys.k())
        .filter(|&c| c.saturating_mul(states) <= 1 << 28)
        .ok_or(Error::CapExceeded {
            size: u128::MAX,
            cap: 1 << 28,
        })?;
    let (xa, xc) = (images(f, sys.a(), states), images(f, sys.c(), states));
    let (ub, ud) = (images(f, sys.b(), inputs), images(f, sys.d(), inputs));
    let mut rows = vec![BTreeMap::new(); states];
    for (x, row) in rows.iter_mut().enumerate() {
        for u in 0..inputs {
            let y = f.vector_index(&add_vec(f, &xa[x], &ub[u]));
            let w = weight(&add_vec(f, &xc[x], &ud[u]));
            row.entry(y).or_insert_with(WeightEnum::zero).add_monomial(w);
        }
    }
    Ok(Wam {
        field: f.clone(),
        delta: sys.delta(),
        rows,
    })
}

/// Weight enumerator of the block code `{uG : u ∈ F^k}` for constant `G`.
pub fn block_weight_enumerator(g: &PolyMatrix) -> Result<WeightEnum> {
    if !g.is_constant() {
        return Err(Error::NotConstant);
    }
    let m = g.coefficient(0);
    if m.rank() != m.rows() {
        return Err(Error::RankDeficient);
    }
    let f = g.field();
    let count = f.vector_count(m.rows()).ok_or(Error::CapExceeded {
        size: u128::MAX,
        cap: usize::MAX as u128,
    })?;
    let mut out = WeightEnum::zero();
    for u in 0..count {
        out.add_monomial(weight(&m.left_apply(&f.vector_from_index(u, m.rows()))));
    }
    Ok(out)
}

impl Wam {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Number of states `q^δ`.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, x: usize, y: usize) -> WeightEnum {
        self.rows[x].get(&y).cloned().unwrap_or_default()
    }

    pub fn row(&self, x: usize) -> &BTreeMap<usize, WeightEnum> {
        &self.rows[x]
    }

    /// Entries as a dense matrix, for display and comparison.
    pub fn to_dense(&self) -> Vec<Vec<WeightEnum>> {
        (0..self.size()).map(|x| (0..self.size()).map(|y| self.get(x, y)).collect()).collect()
    }

    /// Value of row `x` at `W = 1`.
    pub fn row_mass(&self, x: usize) -> u64 {
        self.rows[x].values().map(WeightEnum::total).sum()
    }

    /// State vector with the given index.
    pub fn state(&self, index: usize) -> Vec<Elem> {
        self.field.vector_from_index(index, self.delta)
    }

    /// Digits of the state, concatenated when every element index is a
    /// single digit and comma-separated otherwise.
    pub fn state_label(&self, index: usize) -> String {
        let digits: Vec<String> = self.state(index).iter().map(|e| e.index().to_string()).collect();
        if self.field.order() <= 10 {
            digits.concat()
        } else {
            digits.join(",")
        }
    }

    fn parse_state_label(&self, s: &str) -> Option<usize> {
        let parts: Vec<u32> = if self.field.order() <= 10 {
            s.chars().map(|c| c.to_digit(10)).collect::<Option<_>>()?
        } else if s.is_empty() {
            Vec::new()
        } else {
            s.split(',').map(|t| t.parse().ok()).collect::<Option<_>>()?
        };
        if parts.len() != self.delta {
            return None;
        }
        let v: Vec<Elem> = parts.iter().map(|&i| self.field.elem(i).ok()).collect::<Option<_>>()?;
        Some(self.field.vector_index(&v))
    }

    /// State permutation `X ↦ φ(X)·T` as an index table.
    fn state_map(&self, t: &FieldMatrix, phi: &Automorphism) -> Vec<usize> {
        (0..self.size())
            .map(|x| self.field.vector_index(&t.left_apply(&phi.apply_vec(&self.state(x)))))
            .collect()
    }

    /// `M'_{X,Y} = M_{φ(X)T, φ(Y)T}`
    pub fn relabel(&self, t: &FieldMatrix, phi: &Automorphism) -> Result<Wam> {
        if t.field() != &self.field || phi.field() != &self.field {
            return Err(Error::FieldMismatch(t.field().to_string(), self.field.to_string()));
        }
        if t.rows() != self.delta || !t.is_invertible() {
            return Err(Error::Singular);
        }
        let sigma = self.state_map(t, phi);
        let mut inverse = vec![0; sigma.len()];
        for (x, &s) in sigma.iter().enumerate() {
            inverse[s] = x;
        }
        let rows = (0..self.size())
            .map(|x| {
                self.rows[sigma[x]]
                    .iter()
                    .map(|(&y, e)| (inverse[y], e.clone()))
                    .collect()
            })
            .collect();
        Ok(Wam {
            field: self.field.clone(),
            delta: self.delta,
            rows,
        })
    }

    /// Whether `other_{X,Y} = self_{σX, σY}` for the state map `σ`.
    fn matches_under(&self, other: &Wam, sigma: &[usize], inverse: &[usize]) -> bool {
        (0..self.size()).all(|x| {
            let src = &self.rows[sigma[x]];
            let dst = &other.rows[x];
            src.len() == dst.len() && src.iter().all(|(&y, e)| dst.get(&inverse[y]) == Some(e))
        })
    }

    /// Sorted multiset of nonzero entries, invariant under relabeling.
    fn entry_profile(&self) -> Vec<WeightEnum> {
        let mut all: Vec<WeightEnum> = self.rows.iter().flat_map(|r| r.values().cloned()).collect();
        all.sort();
        all
    }

    /// `(Λᴺ)_{0,0}`: weights of length-`N` paths from and to the zero state.
    pub fn truncated_enumerator(&self, n: usize) -> WeightEnum {
        let mut v = vec![WeightEnum::zero(); self.size()];
        v[0] = WeightEnum::one();
        for _ in 0..n {
            let mut next = vec![WeightEnum::zero(); self.size()];
            for (x, vx) in v.iter().enumerate() {
                if vx.is_zero() {
                    continue;
                }
                for (&y, e) in &self.rows[x] {
                    next[y].add_assign(&vx.mul(e));
                }
            }
            v = next;
        }
        v.swap_remove(0)
    }

    /// Aligned table with state labels along both axes. A single enumerator when there are no states to label.
    pub fn render_table(&self) -> String {
        let dense = self.to_dense();
        if self.delta == 0 {
            return format!("{}\n", dense[0][0]);
        }
        let labels: Vec<String> = (0..self.size()).map(|x| self.state_label(x)).collect();
        let cells: Vec<Vec<String>> = dense.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        let label_w = labels.iter().map(String::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.size())
            .map(|y| cells.iter().map(|r| r[y].len()).chain([labels[y].len()]).max().unwrap())
            .collect();
        let mut out = String::new();
        let header: Vec<String> = labels.iter().zip(&widths).map(|(l, w)| format!("{l:<w$}")).collect();
        out.push_str(format!("{:label_w$}  {}\n", "", header.join("  ")).trim_end());
        out.push('\n');
        for (x, r) in cells.iter().enumerate() {
            let line: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            out.push_str(format!("{:label_w$}  {}", labels[x], line.join("  ")).trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> WamJson {
        let mut entries = Vec::new();
        for (x, row) in self.rows.iter().enumerate() {
            for (&y, e) in row {
                entries.push(WamEntry {
                    from: self.state_label(x),
                    to: self.state_label(y),
                    enumerator: e.clone(),
                });
            }
        }
        WamJson {
            field: self.field.to_string(),
            delta: self.delta,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).unwrap()
    }

    pub fn from_json(src: &str) -> Result<Wam> {
        let j: WamJson = serde_json::from_str(src).map_err(|e| Error::Json(e.to_string()))?;
        let field = parse_field(&j.field)?;
        let states = state_count(&field, j.delta, usize::MAX)?;
        let mut wam = Wam {
            field,
            delta: j.delta,
            rows: vec![BTreeMap::new(); states],
        };
        for e in j.entries {
            let bad = |s: &str| Error::Json(format!("invalid state `{s}`"));
            let x = wam.parse_state_label(&e.from).ok_or_else(|| bad(&e.from))?;
            let y = wam.parse_state_label(&e.to).ok_or_else(|| bad(&e.to))?;
            if !e.enumerator.is_zero() {
                wam.rows[x].insert(y, e.enumerator);
            }
        }
        Ok(wam)
    }
}

/// Serialized form of a [`Wam`], entries sorted by `(from, to)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WamJson {
    pub field: String,
    pub delta: usize,
    pub entries: Vec<WamEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WamEntry {
    pub from: String,
    pub to: String,
    #[serde(rename = "enum")]
    pub enumerator: WeightEnum,
}

/// A relabeling `(T, φ)` witnessing `relabel(Λ, T, φ) = Λ'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelabelWitness {
    pub t: FieldMatrix,
    pub phi: Automorphism,
}

/// Number of candidates `s · |GL_δ(F)|` an exhaustive search visits.
pub fn relabel_search_size(field: &Field, delta: usize) -> u128 {
    gl_order(field.order(), delta).saturating_mul(field.degree() as u128)
}

/// Exhaustive search for `(T, φ)` with `relabel(Λ, T, φ) = Λ'`.
pub fn wam_equivalent(
    lhs: &Wam,
    rhs: &Wam,
    automorphisms: &[Automorphism],
    max_search: u128,
) -> Result<Option<RelabelWitness>> {
    wam_search(lhs, rhs, automorphisms, max_search).map(|(w, _)| w)
}

/// [`wam_equivalent`] together with the number of candidates tried.
///
/// Automorphisms are the outer loop; for each one the identity `T` is tried
/// before the invertible-matrix stream. The first witness found is returned.
pub fn wam_search(
    lhs: &Wam,
    rhs: &Wam,
    automorphisms: &[Automorphism],
    max_search: u128,
) -> Result<(Option<RelabelWitness>, u64)> {
    if lhs.field != rhs.field {
        return Err(Error::FieldMismatch(lhs.field.to_string(), rhs.field.to_string()));
    }
    if lhs.delta != rhs.delta {
        return Ok((None, 0));
    }
    let size = gl_order(lhs.field.order(), lhs.delta).saturating_mul(automorphisms.len() as u128);
    if size > max_search {
        return Err(Error::CapExceeded { size, cap: max_search });
    }
    if lhs.entry_profile() != rhs.entry_profile() {
        return Ok((None, 0));
    }
    let identity = FieldMatrix::identity(&lhs.field, lhs.delta);
    let mut inverse = vec![0; lhs.size()];
    let mut checked = 0u64;
    for phi in automorphisms {
        let candidates = std::iter::once(identity.clone())
            .chain(enumerate_invertible(&lhs.field, lhs.delta, u128::MAX)?.filter(|t| !t.is_identity()));
        for t in candidates {
            checked += 1;
            let sigma = lhs.state_map(&t, phi);
            for (x, &s) in sigma.iter().enumerate() {
                inverse[s] = x;
            }
            if lhs.matches_under(rhs, &sigma, &inverse) {
                return Ok((Some(RelabelWitness { t, phi: phi.clone() }), checked));
            }
        }
    }
    Ok((None, checked))
}
