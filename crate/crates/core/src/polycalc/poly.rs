//! Sparse multivariate polynomials over ℚ(ζ_n).
//!
//! Variables are positional (`0..nvars`); names only matter for parsing and
//! printing, see [`super::VarNames`]. Terms live in a `BTreeMap` keyed by
//! exponent vectors in graded-lex order, so the map is canonical and the
//! leading term is its last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::PolyError;
use crate::exactalg::Cyclo;

pub type Exps = SmallVec<[u16; 6]>;

/// Exponent vector ordered graded-lexicographically (earlier variables
/// dominate within a degree).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Exps);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent allows it.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = Exps::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Mono(out))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    nvars: usize,
    conductor: u32,
    terms: BTreeMap<Mono, Cyclo>,
}

impl MultiPoly {
    pub fn zero(nvars: usize, conductor: u32) -> Self {
        MultiPoly { nvars, conductor, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Cyclo) -> Self {
        let mut p = Self::zero(nvars, c.conductor());
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize, conductor: u32) -> Self {
        Self::constant(nvars, Cyclo::one(conductor))
    }

    pub fn int(nvars: usize, conductor: u32, v: i64) -> Self {
        Self::constant(nvars, Cyclo::from_int(conductor, v))
    }

    pub fn var(nvars: usize, conductor: u32, i: usize) -> Self {
        Self::term(Mono::var(nvars, i, 1), Cyclo::one(conductor))
    }

    pub fn term(m: Mono, c: Cyclo) -> Self {
        let mut p = Self::zero(m.0.len(), c.conductor());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, conductor: u32, it: impl IntoIterator<Item = (Mono, Cyclo)>) -> Self {
        let mut p = Self::zero(nvars, conductor);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Cyclo)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, Cyclo)> {
        self.terms.into_iter()
    }

    pub fn leading(&self) -> Option<(&Mono, &Cyclo)> {
        self.terms.last_key_value()
    }

    pub fn coeff(&self, m: &Mono) -> Cyclo {
        self.terms.get(m).cloned().unwrap_or_else(|| Cyclo::zero(self.conductor))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Cyclo {
        self.coeff(&Mono::one(self.nvars))
    }

    /// Some(c) when the polynomial is the constant c (including 0).
    pub fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero(self.conductor)),
            1 => {
                let (m, c) = self.terms.first_key_value()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Mono, c: &Cyclo) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars && self.conductor == other.conductor {
            Ok(())
        } else {
            Err(PolyError::RingMismatch {
                lhs: (self.nvars, self.conductor),
                rhs: (other.nvars, other.conductor),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_ring(other)?;
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.conductor);
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MultiPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.conductor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Total degree (None for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> Option<u16> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// The common degree when all terms share one total degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Mono::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Linear monomial substitution: variable `i` ↦ `map[i].1 · y_{map[i].0}`
    /// in a ring with `target_nvars` variables.
    pub fn subst_linear(&self, map: &[(usize, Cyclo)], target_nvars: usize) -> Self {
        debug_assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(target_nvars, self.conductor);
        let mut powers: Vec<Vec<Cyclo>> = vec![vec![Cyclo::one(self.conductor)]; self.nvars];
        for (m, c) in &self.terms {
            let mut exps = Exps::from_elem(0, target_nvars);
            let mut coeff = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (t, ref s) = map[i];
                exps[t] += e;
                if !s.is_one() {
                    let table = &mut powers[i];
                    while table.len() <= e as usize {
                        let next = table.last().expect("seeded") * s;
                        table.push(next);
                    }
                    coeff = &coeff * &table[e as usize];
                }
            }
            out.add_term(Mono(exps), &coeff);
        }
        out
    }

    /// Moves variable `i` to position `map[i]` of a larger (or equal) ring.
    pub fn embed(&self, map: &[usize], target_nvars: usize) -> Self {
        let mut out = Self::zero(target_nvars, self.conductor);
        for (m, c) in &self.terms {
            let mut exps = Exps::from_elem(0, target_nvars);
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Mono(exps), c);
        }
        out
    }

    /// General substitution of every variable by a polynomial of a common
    /// target ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<Self, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::UnknownVariable(format!(
                "substitution lists {} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let (tn, cond) = (first.nvars, first.conductor);
        for im in images {
            if im.nvars != tn || im.conductor != cond {
                return Err(PolyError::RingMismatch {
                    lhs: (tn, cond),
                    rhs: (im.nvars, im.conductor),
                });
            }
        }
        let mut cache: Vec<Vec<MultiPoly>> =
            images.iter().map(|_| vec![MultiPoly::one(tn, cond)]).collect();
        let mut out = Self::zero(tn, cond);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(tn, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().expect("seeded") * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Sets variable `var` to the value `v` (in the same ring).
    pub fn substitute_var(&self, var: usize, v: &MultiPoly) -> Self {
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| if i == var { v.clone() } else { MultiPoly::var(self.nvars, self.conductor, i) })
            .collect();
        self.substitute(&images).expect("images built in the same ring")
    }

    /// Exact quotient by `den`, using graded-lex division with a single
    /// divisor; fails with the remainder when `den` does not divide `self`.
    pub fn exact_divide(&self, den: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.same_ring(den)?;
        let (lm, lc) = den.leading().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = lc.inv().expect("leading coefficient is nonzero");
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars, self.conductor);
        let mut stuck = Self::zero(self.nvars, self.conductor);
        while let Some((m, c)) = rem.terms.pop_last() {
            match m.div(lm) {
                Some(qm) => {
                    let qc = &c * &lc_inv;
                    for (dm, dc) in den.terms.iter().rev().skip(1) {
                        rem.add_term(dm.mul(&qm), &-(dc * &qc));
                    }
                    q.add_term(qm, &qc);
                }
                None => {
                    stuck.terms.insert(m, c);
                }
            }
        }
        if stuck.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible { remainder: Box::new(stuck) })
        }
    }

    /// (p − p|_{v1 := v2}) / (v1 − v2), always an exact polynomial.
    pub fn divided_difference(&self, v1: usize, v2: usize) -> Result<MultiPoly, PolyError> {
        if v1 >= self.nvars || v2 >= self.nvars {
            return Err(PolyError::UnknownVariable(format!("index {} or {}", v1, v2)));
        }
        let swapped = self.substitute_var(v1, &MultiPoly::var(self.nvars, self.conductor, v2));
        let num = self - &swapped;
        let den = &MultiPoly::var(self.nvars, self.conductor, v1)
            - &MultiPoly::var(self.nvars, self.conductor, v2);
        num.exact_divide(&den)
    }

    /// Coefficient of `var^e`, as a polynomial free of `var`.
    pub fn coeff_of_power(&self, var: usize, e: u16) -> MultiPoly {
        let mut out = Self::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            if m.0[var] == e {
                let mut k = m.clone();
                k.0[var] = 0;
                out.add_term(k, c);
            }
        }
        out
    }

    /// Division with remainder in one variable by a divisor whose leading
    /// coefficient in that variable is a nonzero constant.
    pub fn div_rem_in(&self, var: usize, divisor: &MultiPoly) -> Result<(MultiPoly, MultiPoly), PolyError> {
        self.same_ring(divisor)?;
        let dd = divisor.degree_in(var).ok_or(PolyError::DivisionByZero)?;
        let lead = divisor
            .coeff_of_power(var, dd)
            .as_constant()
            .ok_or_else(|| PolyError::NotMonic(var))?;
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars, self.conductor);
        while let Some(rd) = rem.degree_in(var) {
            if rd < dd {
                break;
            }
            let top = rem.coeff_of_power(var, rd).scale(&lead_inv);
            let shift = Mono::var(self.nvars, var, rd - dd);
            let qt = top.mul_mono(&shift);
            rem = &rem - &(&qt * divisor);
            q = &q + &qt;
        }
        Ok((q, rem))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                match self.$f(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl std::ops::$tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = super::VarNames::generic(self.nvars);
        write!(f, "{}", names.render(self))
    }
}
