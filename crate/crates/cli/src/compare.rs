//! Exact Landau-Ginzburg data against numeric CFT data. Every comparison is
//! exact-versus-numeric with the tolerance stated in its result.

use mbf_cft::examples::{ratio, ratio_closed_form};
use mbf_cft::{defect_spectrum, dictionary_label, dictionary_set, mm_fuse, two_by_two, CftError, MMLabel};
use mbf_core::exactalg::rat::rat_to_string;
use mbf_core::exactalg::{Cyclo, Real};
use mbf_core::fusion::{decompose_into_ps, reduce_tensor, solve_fusing_2x2, FusionError, PsObject};
use mbf_core::graded::{hom_space, GradedError, GradedMbf};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CompareError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Cft(#[from] CftError),
    #[error("{0}")]
    Precondition(String),
}

fn dev(x: &Real, y: &Real) -> f64 {
    x.sub(y).abs().to_f64()
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioComparison {
    pub d: u32,
    pub tol: f64,
    /// `−η/(η²+η+1)` from the Landau-Ginzburg fusing matrix.
    pub exact: Cyclo,
    pub exact_embedded: String,
    /// `−1/(1+2cos 2π/d)`.
    pub closed_form: String,
    /// `F₀₀F₂₂/(F₀₂F₂₀)` from the 6j-symbols.
    pub cft: String,
    pub deviation: f64,
    pub pass: bool,
}

pub fn ratio_compare(d: u32, tol: f64, prec: u32) -> Result<RatioComparison, CompareError> {
    if d < 4 {
        return Err(CompareError::Precondition(format!("the ratio needs d ≥ 4, got {d}")));
    }
    let exact = solve_fusing_2x2(d)?.ratio_exact;
    let z = exact.embed(prec);
    let closed = ratio_closed_form(d, prec);
    let cft = ratio(&two_by_two(d, prec)?);
    let deviation = [dev(&z.re, &closed), z.im.abs().to_f64(), dev(&cft, &closed)].into_iter().fold(0.0, f64::max);
    let digits = mbf_cft::decimal_digits(prec);
    Ok(RatioComparison {
        d,
        tol,
        exact,
        exact_embedded: z.re.to_decimal(digits),
        closed_form: closed.to_decimal(digits),
        cft: cft.to_decimal(digits),
        deviation,
        pass: deviation <= tol,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumComparison {
    pub d: u32,
    pub u: u32,
    /// Charges of `Hom(P_{0}, P_{0..u})`.
    pub lg: Vec<String>,
    /// `q_{[u+l,u+l,0]} + q_{[l,l,0]}` over the chiral defect fields.
    pub cft: Vec<String>,
    pub pass: bool,
}

pub fn spectrum_compare(d: u32, u: u32) -> Result<SpectrumComparison, CompareError> {
    if d < 3 || u + 2 > d {
        return Err(CompareError::Precondition(format!("need 0 ≤ u ≤ d−2, got d = {d}, u = {u}")));
    }
    let target: Vec<i64> = (0..=i64::from(u)).collect();
    let lg = hom_space(&GradedMbf::p_s(d, &[0])?, &GradedMbf::p_s(d, &target)?, None)?.charge_multiset();
    let cft = defect_spectrum(d, u, 0, true)?.charges();
    Ok(SpectrumComparison {
        d,
        u,
        pass: lg == cft,
        lg: lg.iter().map(rat_to_string).collect(),
        cft: cft.iter().map(rat_to_string).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionRow {
    pub left: Vec<i64>,
    pub right: Vec<i64>,
    /// Summands of the reduced tensor product.
    pub lg: Vec<Vec<i64>>,
    pub cft_labels: Vec<String>,
    /// `cft_labels` through the dictionary.
    pub cft: Vec<Vec<i64>>,
    /// `π∘ι = id`, `ι, π` closed and `id − ι∘π = δh`, when requested.
    pub reduction_verified: Option<bool>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    pub d: u32,
    pub cutoff: Option<u32>,
    pub rows: Vec<FusionRow>,
    pub pass: bool,
}

/// Proper cyclic intervals mod `d`, ordered by length then start.
pub fn consecutive_sets(d: u32) -> Vec<Vec<i64>> {
    let d = i64::from(d);
    let mut out = vec![];
    for len in 1..d {
        for start in 0..d {
            let mut s: Vec<i64> = (start..start + len).map(|i| i % d).collect();
            s.sort_unstable();
            out.push(s);
        }
    }
    out
}

fn by_size(sets: &mut [Vec<i64>]) {
    sets.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
}

pub fn fusion_row(d: u32, left: &[i64], right: &[i64], cutoff: Option<u32>) -> Result<FusionRow, CompareError> {
    let r = reduce_tensor(&PsObject::new(d, left)?, &PsObject::new(d, right)?)?;
    let reduction_verified = cutoff.map(|c| r.verify(c).pass);
    let lg = decompose_into_ps(&r.reduced.base)?.sets();
    let labels: Vec<MMLabel> = mm_fuse(dictionary_label(d, left)?, dictionary_label(d, right)?)?;
    let mapped: Option<Vec<Vec<i64>>> = labels.iter().map(|&x| dictionary_set(x)).collect();
    let mut cft = mapped.unwrap_or_default();
    by_size(&mut cft);
    let agree = cft.len() == labels.len() && cft == lg && reduction_verified != Some(false);
    Ok(FusionRow {
        left: left.to_vec(),
        right: right.to_vec(),
        lg,
        cft_labels: labels.iter().map(MMLabel::to_string).collect(),
        cft,
        reduction_verified,
        agree,
    })
}

/// Every ordered pair of consecutive sets at `d`.
pub fn fusion_rule_compare(d: u32, cutoff: Option<u32>) -> Result<FusionTable, CompareError> {
    if !(3..=8).contains(&d) {
        return Err(CompareError::Precondition(format!("fusion tables are supported for 3 ≤ d ≤ 8, got {d}")));
    }
    let sets = consecutive_sets(d);
    let pairs: Vec<(&Vec<i64>, &Vec<i64>)> = sets.iter().flat_map(|s| sets.iter().map(move |t| (s, t))).collect();
    let rows = pairs.into_par_iter().map(|(s, t)| fusion_row(d, s, t, cutoff)).collect::<Result<Vec<_>, _>>()?;
    Ok(FusionTable { d, cutoff, pass: rows.iter().all(|r| r.agree), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_at_small_d() {
        for d in [4u32, 5, 6] {
            assert!(ratio_compare(d, 1e-10, 128).unwrap().pass, "d = {d}");
        }
        assert!(ratio_compare(3, 1e-10, 128).is_err());
    }

    #[test]
    fn doublet_row() {
        let row = fusion_row(5, &[0, 1], &[0, 1], Some(10)).unwrap();
        assert!(row.agree, "{row:?}");
        assert_eq!(row.lg, vec![vec![1], vec![0, 1, 2]]);
        assert_eq!(row.cft_labels, vec!["[0,2,0]", "[2,2,0]"]);
    }

    #[test]
    fn spectrum_at_d5() {
        let c = spectrum_compare(5, 1).unwrap();
        assert!(c.pass);
        assert_eq!(c.lg, vec!["1/5", "3/5", "1"]);
    }
}
