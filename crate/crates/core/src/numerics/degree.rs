//! Symbolic degree bookkeeping for grid-based identity proofs.
//!
//! A tracked value stands for a rational function `P / Q` in the sampled
//! variables. `Q` is kept as a multiset of denominator factors so that sums
//! of terms over shared factors (Pochhammer products, q-shifted factorials)
//! are bounded over a common multiple instead of the full product. Short
//! polynomials are carried exactly, which is what lets factors such as
//! `a+b+j` or `1-b*q^k` be recognised when they reappear.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use super::{ExactRational, Scalar};

const MAX_TERMS: usize = 24;

static OPAQUE_IDS: AtomicU64 = AtomicU64::new(0);

type Mono = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Poly(BTreeMap<Mono, ExactRational>);

impl Poly {
    fn monomial(coef: ExactRational, mono: Mono) -> Poly {
        let mut m = BTreeMap::new();
        if !coef.is_zero() {
            m.insert(mono, coef);
        }
        Poly(m)
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            let e = out.entry(k.clone()).or_insert_with(ExactRational::zero);
            *e = &*e + v;
            if e.is_zero() {
                out.remove(k);
            }
        }
        Poly(out)
    }

    fn mul(&self, other: &Poly) -> Option<Poly> {
        let mut out: BTreeMap<Mono, ExactRational> = BTreeMap::new();
        for (ka, va) in &self.0 {
            for (kb, vb) in &other.0 {
                let k: Mono = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let e = out.entry(k.clone()).or_insert_with(ExactRational::zero);
                *e = &*e + &(va * vb);
                if e.is_zero() {
                    out.remove(&k);
                }
            }
            if out.len() > 4 * MAX_TERMS {
                return None;
            }
        }
        (out.len() <= MAX_TERMS).then_some(Poly(out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Atom {
    Var(usize),
    Poly(Poly),
    Opaque(u64, Vec<u32>),
}

impl Atom {
    fn degree(&self, nvars: usize) -> Vec<u32> {
        match self {
            Atom::Var(i) => (0..nvars).map(|j| u32::from(j == *i)).collect(),
            Atom::Poly(p) => (0..nvars)
                .map(|j| p.0.keys().map(|m| m[j]).max().unwrap_or(0).max(0) as u32)
                .collect(),
            Atom::Opaque(_, d) => d.clone(),
        }
    }
}

/// Exact value `coef * x^mono * prod atom^mult` with polynomial atoms.
#[derive(Clone, Debug)]
struct Factored {
    coef: ExactRational,
    mono: Mono,
    atoms: BTreeMap<Atom, i32>,
}

impl Factored {
    fn constant(nvars: usize, coef: ExactRational) -> Self {
        Factored { coef, mono: vec![0; nvars], atoms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    fn from_poly(nvars: usize, p: Poly) -> Factored {
        if p.0.is_empty() {
            return Factored::constant(nvars, ExactRational::zero());
        }
        if p.0.len() == 1 {
            let (m, c) = p.0.into_iter().next().expect("one term");
            return Factored { coef: c, mono: m, atoms: BTreeMap::new() };
        }
        let content: Mono = (0..nvars).map(|j| p.0.keys().map(|m| m[j]).min().unwrap_or(0)).collect();
        let lead = p.0.values().next().expect("nonempty").clone();
        let inv = lead.recip().expect("nonzero coefficient");
        let reduced = p
            .0
            .iter()
            .map(|(m, c)| (m.iter().zip(&content).map(|(a, b)| a - b).collect(), c * &inv))
            .collect();
        let mut atoms = BTreeMap::new();
        atoms.insert(Atom::Poly(Poly(reduced)), 1);
        Factored { coef: lead, mono: content, atoms }
    }

    fn expand(&self) -> Option<Poly> {
        let mut acc = Poly::monomial(self.coef.clone(), self.mono.clone());
        for (atom, &mult) in &self.atoms {
            let Atom::Poly(p) = atom else { return None };
            if mult < 0 {
                return None;
            }
            for _ in 0..mult {
                acc = acc.mul(p)?;
            }
        }
        Some(acc)
    }

    fn mul(&self, other: &Factored) -> Factored {
        let mut atoms = self.atoms.clone();
        for (k, v) in &other.atoms {
            let e = atoms.entry(k.clone()).or_insert(0);
            *e += v;
            if *e == 0 {
                atoms.remove(k);
            }
        }
        Factored {
            coef: &self.coef * &other.coef,
            mono: self.mono.iter().zip(&other.mono).map(|(a, b)| a + b).collect(),
            atoms,
        }
    }

    fn inverse(&self) -> Factored {
        Factored {
            coef: self.coef.recip().expect("nonzero coefficient"),
            mono: self.mono.iter().map(|e| -e).collect(),
            atoms: self.atoms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    /// Sum after pulling out the common factor of both operands.
    fn add(&self, other: &Factored) -> Option<Factored> {
        let nvars = self.mono.len();
        let mut common_atoms = BTreeMap::new();
        for k in self.atoms.keys().chain(other.atoms.keys()) {
            let a = self.atoms.get(k).copied().unwrap_or(0);
            let b = other.atoms.get(k).copied().unwrap_or(0);
            let m = a.min(b);
            if m != 0 {
                common_atoms.insert(k.clone(), m);
            }
        }
        let common = Factored {
            coef: ExactRational::one(),
            mono: self.mono.iter().zip(&other.mono).map(|(a, b)| *a.min(b)).collect(),
            atoms: common_atoms,
        };
        let inv = common.inverse();
        let ra = self.mul(&inv).expand()?;
        let rb = other.mul(&inv).expand()?;
        let sum = ra.add(&rb);
        if sum.0.len() > MAX_TERMS {
            return None;
        }
        let s = Factored::from_poly(nvars, sum);
        if s.is_zero() {
            return Some(s);
        }
        Some(s.mul(&common))
    }
}

/// Degree tracker over `nvars` variables.
#[derive(Clone, Debug)]
pub struct DegreeTracker {
    nvars: usize,
    exact: Option<Factored>,
    num: Vec<u32>,
    den: BTreeMap<Atom, u32>,
}

fn den_degree(den: &BTreeMap<Atom, u32>, nvars: usize) -> Vec<u32> {
    let mut d = vec![0u32; nvars];
    for (atom, &count) in den {
        for (slot, deg) in d.iter_mut().zip(atom.degree(nvars)) {
            *slot += count * deg;
        }
    }
    d
}

impl DegreeTracker {
    /// The `nvars` coordinate variables.
    pub fn variables(nvars: usize) -> Vec<DegreeTracker> {
        (0..nvars)
            .map(|i| {
                let mut mono = vec![0; nvars];
                mono[i] = 1;
                Self::from_factored(Factored { coef: ExactRational::one(), mono, atoms: BTreeMap::new() })
            })
            .collect()
    }

    pub fn constant(nvars: usize, value: &ExactRational) -> DegreeTracker {
        Self::from_factored(Factored::constant(nvars, value.clone()))
    }

    fn from_factored(f: Factored) -> DegreeTracker {
        let nvars = f.mono.len();
        let mut num = vec![0u32; nvars];
        let mut den = BTreeMap::new();
        if !f.is_zero() {
            for (j, &e) in f.mono.iter().enumerate() {
                if e > 0 {
                    num[j] += e as u32;
                } else if e < 0 {
                    den.insert(Atom::Var(j), (-e) as u32);
                }
            }
            for (atom, &mult) in &f.atoms {
                if mult > 0 {
                    for (slot, d) in num.iter_mut().zip(atom.degree(nvars)) {
                        *slot += mult as u32 * d;
                    }
                } else {
                    *den.entry(atom.clone()).or_insert(0) += (-mult) as u32;
                }
            }
        }
        DegreeTracker { nvars, exact: Some(f), num, den }
    }

    /// Degree bound per variable of the numerator over the tracked
    /// denominator.
    pub fn degree_bound(&self) -> Vec<u32> {
        self.num.clone()
    }

    /// True when the value is symbolically the zero function.
    pub fn is_symbolic_zero(&self) -> bool {
        self.exact.as_ref().is_some_and(Factored::is_zero)
    }

    fn general_add(&self, other: &DegreeTracker) -> DegreeTracker {
        let mut l = self.den.clone();
        for (k, &v) in &other.den {
            let e = l.entry(k.clone()).or_insert(0);
            *e = (*e).max(v);
        }
        let dl = den_degree(&l, self.nvars);
        let da = den_degree(&self.den, self.nvars);
        let db = den_degree(&other.den, self.nvars);
        let num = (0..self.nvars)
            .map(|j| (self.num[j] + dl[j] - da[j]).max(other.num[j] + dl[j] - db[j]))
            .collect();
        DegreeTracker { nvars: self.nvars, exact: None, num, den: l }
    }
}

impl Add for DegreeTracker {
    type Output = DegreeTracker;
    fn add(self, rhs: DegreeTracker) -> DegreeTracker {
        if self.is_symbolic_zero() {
            return rhs;
        }
        if rhs.is_symbolic_zero() {
            return self;
        }
        if let (Some(a), Some(b)) = (&self.exact, &rhs.exact) {
            if let Some(f) = a.add(b) {
                return DegreeTracker::from_factored(f);
            }
        }
        self.general_add(&rhs)
    }
}

impl Sub for DegreeTracker {
    type Output = DegreeTracker;
    fn sub(self, rhs: DegreeTracker) -> DegreeTracker {
        self + (-rhs)
    }
}

impl Neg for DegreeTracker {
    type Output = DegreeTracker;
    fn neg(mut self) -> DegreeTracker {
        if let Some(f) = self.exact.as_mut() {
            f.coef = -f.coef.clone();
        }
        self
    }
}

impl Mul for DegreeTracker {
    type Output = DegreeTracker;
    fn mul(self, rhs: DegreeTracker) -> DegreeTracker {
        if self.is_symbolic_zero() {
            return self;
        }
        if rhs.is_symbolic_zero() {
            return rhs;
        }
        if let (Some(a), Some(b)) = (&self.exact, &rhs.exact) {
            return DegreeTracker::from_factored(a.mul(b));
        }
        let mut den = self.den.clone();
        for (k, &v) in &rhs.den {
            *den.entry(k.clone()).or_insert(0) += v;
        }
        let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
        DegreeTracker { nvars: self.nvars, exact: None, num, den }
    }
}

impl Scalar for DegreeTracker {
    fn lift(&self, value: &ExactRational) -> Self {
        DegreeTracker::constant(self.nvars, value)
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if let Some(b) = rhs.exact.as_ref().filter(|b| !b.is_zero()) {
            let inv = DegreeTracker::from_factored(b.inverse());
            return Some(self.clone() * inv);
        }
        let id = OPAQUE_IDS.fetch_add(1, Ordering::Relaxed);
        let lifted = den_degree(&rhs.den, self.nvars);
        let num = self.num.iter().zip(&lifted).map(|(a, b)| a + b).collect();
        let mut den = self.den.clone();
        den.insert(Atom::Opaque(id, rhs.num.clone()), 1);
        Some(DegreeTracker { nvars: self.nvars, exact: None, num, den })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Vec<DegreeTracker> {
        DegreeTracker::variables(n)
    }

    #[test]
    fn polynomial_degrees() {
        let v = vars(2);
        let (x, y) = (v[0].clone(), v[1].clone());
        let p = (x.clone() + y.one_like()) * (x.clone() - y.clone()) * y.clone();
        assert_eq!(p.degree_bound(), vec![2, 2]);
    }

    #[test]
    fn shared_denominators_merge() {
        let v = vars(2);
        let (a, q) = (v[0].clone(), v[1].clone());
        let one = a.one_like();
        // sum_k 1/((1-a q^k)(1-a q^{k+1})) over k=0..3 shares factors pairwise
        let f = |k: usize| one.clone() - a.clone() * q.pow_u(k);
        let mut acc = a.zero_like();
        for k in 0..4 {
            acc = acc + one.try_div(&(f(k) * f(k + 1))).unwrap();
        }
        let naive_den: u32 = (0..4).map(|k| 2 * k + 1).sum::<u32>();
        let b = acc.degree_bound();
        assert!(b[1] < naive_den, "{b:?}");
        // common denominator prod_{k<=4}(1-aq^k): q-degree 10, numerator <= 10-1
        assert!(b[1] <= 10);
    }

    #[test]
    fn cancellation_to_zero() {
        let v = vars(1);
        let x = v[0].clone();
        let d = (x.clone() + x.one_like()) * (x.clone() - x.one_like()) - (x.clone() * x.clone() - x.one_like());
        assert!(d.is_symbolic_zero());
    }

    #[test]
    fn opaque_division_is_conservative() {
        let v = vars(1);
        let x = v[0].clone();
        let mut big = x.one_like();
        for k in 0..6 {
            big = big * (x.clone() + x.lift_int(k + 1)) + x.clone();
        }
        let r = x.clone().try_div(&big).unwrap();
        assert_eq!(r.degree_bound(), vec![1]);
        let s = r.clone() + x.one_like();
        assert!(s.degree_bound()[0] >= 6);
    }
}
