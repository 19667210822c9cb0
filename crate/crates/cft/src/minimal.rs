//! N=2 minimal model labels `[l, m, s]` at `c = 3(d−2)/d`: selection rule
//! `l + m + s ≡ 0 (2)`, identification `[l,m,s] ~ [d−2−l, d+m, s+2]`,
//! fusion, chiral charges and defect-changing spectra.

use std::fmt;

use mbf_core::exactalg::Rat;
use serde::Serialize;

use crate::CftError;

/// Canonical representative: `m ∈ 0..2d`, `s ∈ {0, 1}`. Exactly one of
/// `s` and `s + 2` lies in `{0, 1}`, so every orbit has one such member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MMLabel {
    pub d: u32,
    pub l: u32,
    pub m: u32,
    pub s: u32,
}

impl fmt::Display for MMLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.l, self.m, self.s)
    }
}

impl MMLabel {
    /// `[l, −m, −s]`.
    pub fn dual(self) -> MMLabel {
        mm_normalize(self.d, i64::from(self.l), -i64::from(self.m), -i64::from(self.s)).expect("parity is preserved")
    }
}

pub fn mm_normalize(d: u32, l: i64, m: i64, s: i64) -> Result<MMLabel, CftError> {
    if d < 2 {
        return Err(CftError::Precondition(format!("minimal models need d ≥ 2, got {d}")));
    }
    let top = i64::from(d) - 2;
    if !(0..=top).contains(&l) {
        return Err(CftError::Range { label: l, max: top });
    }
    if (l + m + s).rem_euclid(2) != 0 {
        return Err(CftError::Parity(l + m + s));
    }
    let dd = i64::from(d);
    let (l, m, s) = if s.rem_euclid(4) < 2 { (l, m, s) } else { (top - l, m + dd, s + 2) };
    Ok(MMLabel { d, l: l as u32, m: m.rem_euclid(2 * dd) as u32, s: s.rem_euclid(4) as u32 })
}

/// All labels of the model, canonical and sorted.
pub fn mm_labels(d: u32) -> Vec<MMLabel> {
    let mut out = vec![];
    for l in 0..=(d - 2) {
        for m in 0..2 * d {
            for s in 0..2 {
                if (l + m + s) % 2 == 0 {
                    out.push(MMLabel { d, l, m, s });
                }
            }
        }
    }
    out
}

/// `[l,m,s] ⋆ [l′,m′,s′] = Σ_u [u, m+m′, s+s′]`, `u` from `|l−l′|` to
/// `min(l+l′, 2d−4−l−l′)` in steps of two. Multiplicity free; sorted.
pub fn mm_fuse(x: MMLabel, y: MMLabel) -> Result<Vec<MMLabel>, CftError> {
    if x.d != y.d {
        return Err(CftError::Mismatch(x.d, y.d));
    }
    let d = i64::from(x.d);
    let (l, l2) = (i64::from(x.l), i64::from(y.l));
    let (m, s) = (i64::from(x.m + y.m), i64::from(x.s + y.s));
    let hi = (l + l2).min(2 * d - 4 - l - l2);
    let mut out = vec![];
    let mut u = (l - l2).abs();
    while u <= hi {
        out.push(mm_normalize(x.d, u, m, s)?);
        u += 2;
    }
    out.sort();
    Ok(out)
}

/// `q_{[l,l,0]} = l/d`.
pub fn chiral_charge(d: u32, l: u32) -> Result<Rat, CftError> {
    if l + 2 > d {
        return Err(CftError::Range { label: i64::from(l), max: i64::from(d) - 2 });
    }
    Ok(Rat::new(i64::from(l).into(), i64::from(d).into()))
}

/// `D_{[l, l+2m, 0]} ↔ P_{{m, …, m+l}}`. The set must be consecutive mod `d`
/// and proper.
pub fn dictionary_label(d: u32, set: &[i64]) -> Result<MMLabel, CftError> {
    let dd = i64::from(d);
    let mut res: Vec<i64> = set.iter().map(|x| x.rem_euclid(dd)).collect();
    res.sort_unstable();
    res.dedup();
    let len = res.len() as i64;
    if res.len() != set.len() || len == 0 || len >= dd {
        return Err(CftError::Precondition(format!("{set:?} is not a proper subset of residues mod {d}")));
    }
    let start = res
        .iter()
        .copied()
        .find(|&m| (0..len).all(|j| res.binary_search(&((m + j) % dd)).is_ok()))
        .ok_or_else(|| CftError::Precondition(format!("{set:?} is not consecutive mod {d}")))?;
    mm_normalize(d, len - 1, len - 1 + 2 * start, 0)
}

/// Inverse of [`dictionary_label`]; `None` for labels with `s ≠ 0`.
pub fn dictionary_set(x: MMLabel) -> Option<Vec<i64>> {
    if x.s != 0 {
        return None;
    }
    let d = i64::from(x.d);
    let l = i64::from(x.l);
    let start = (i64::from(x.m) - l).div_euclid(2);
    let mut set: Vec<i64> = (0..=l).map(|j| (start + j).rem_euclid(d)).collect();
    set.sort_unstable();
    Some(set)
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectPair {
    pub left: MMLabel,
    pub right: MMLabel,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectSpectrum {
    pub d: u32,
    pub u: u32,
    pub n: i64,
    pub chiral_only: bool,
    /// `U^∨ ⊗ V` for the two defects; always `[u, u, 0]`.
    pub channel: MMLabel,
    pub pairs: Vec<DefectPair>,
}

impl DefectSpectrum {
    /// `q_left + q_right` per pair; only meaningful for the chiral list.
    pub fn charges(&self) -> Vec<Rat> {
        let mut q: Vec<Rat> = self
            .pairs
            .iter()
            .map(|p| Rat::new(i64::from(p.left.l + p.right.l).into(), i64::from(self.d).into()))
            .collect();
        q.sort();
        q
    }
}

/// Fields changing `D_{[0,2n,0]}` into `D_{[u,2n+u,0]}`: pairs
/// `([l,m,s], [l′,m′,s′])` with the channel in `[l,m,s] ⋆ [l′,−m′,s′]`.
/// With `chiral_only`, only pairs of chiral-primary representations
/// `[L,L,0] ⊗ [L′,L′,0]` are kept, sorted by `L′`.
pub fn defect_spectrum(d: u32, u: u32, n: i64, chiral_only: bool) -> Result<DefectSpectrum, CftError> {
    if d < 3 || u + 2 > d {
        return Err(CftError::Range { label: i64::from(u), max: i64::from(d) - 2 });
    }
    let from = mm_normalize(d, 0, 2 * n, 0)?;
    let to = mm_normalize(d, i64::from(u), 2 * n + i64::from(u), 0)?;
    let channel = match mm_fuse(from.dual(), to)?.as_slice() {
        [c] => *c,
        other => return Err(CftError::Precondition(format!("expected one channel, got {other:?}"))),
    };
    let labels = mm_labels(d);
    let chiral: Vec<MMLabel> = (0..=i64::from(d) - 2).map(|l| mm_normalize(d, l, l, 0)).collect::<Result<_, _>>()?;
    let mut pairs = vec![];
    for &left in &labels {
        for &right in &labels {
            if chiral_only && !(chiral.contains(&left) && chiral.contains(&right)) {
                continue;
            }
            let flipped = mm_normalize(d, i64::from(right.l), -i64::from(right.m), i64::from(right.s))?;
            if mm_fuse(left, flipped)?.contains(&channel) {
                pairs.push(DefectPair { left, right });
            }
        }
    }
    if chiral_only {
        pairs.sort_by_key(|p| p.right.l);
    }
    Ok(DefectSpectrum { d, u, n, chiral_only, channel, pairs })
}
