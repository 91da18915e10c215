use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use super::value::ExtComplex;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Elementary functions available in the expression language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Tan,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "exp" => Some(Func::Exp),
            "sin" => Some(Func::Sin),
            "cos" => Some(Func::Cos),
            "tan" => Some(Func::Tan),
            _ => None,
        }
    }

    fn apply<T: Real>(self, w: ExtComplex<T>) -> Result<ExtComplex<T>> {
        let w = match w {
            ExtComplex::Finite(w) => w,
            ExtComplex::Infinity => return Err(Error::EssentialSingularity(self.name())),
        };
        let value = match self {
            Func::Exp => w.exp(),
            Func::Sin => w.sin(),
            Func::Cos => w.cos(),
            Func::Tan => return Ok(tan_extended(w)),
        };
        Ok(ExtComplex::from(value))
    }
}

/// `tan` on the extended plane. Arguments that round to a pole `(k + 1/2)π`
/// (the floating-point neighbours of the lattice) map to `∞`.
fn tan_extended<T: Real>(w: Complex<T>) -> ExtComplex<T> {
    let pi = T::PI();
    let half = T::lit(0.5);
    let k = (w.re / pi - half).round();
    let pole = (k + half) * pi;
    let gap = (w - Complex::new(pole, T::zero())).norm();
    let scale = T::one().max(w.norm());
    if gap <= T::lit(8.0) * T::epsilon() * scale {
        return ExtComplex::Infinity;
    }
    let c = w.cos();
    if c.re == T::zero() && c.im == T::zero() {
        return ExtComplex::Infinity;
    }
    ExtComplex::from(w.sin() / c)
}

/// Immutable expression tree for a meromorphic function of `z`, optionally
/// containing the integer family index `n`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr<T> {
    Const(Complex<T>),
    Var,
    Index,
    Add(Arc<Expr<T>>, Arc<Expr<T>>),
    Sub(Arc<Expr<T>>, Arc<Expr<T>>),
    Mul(Arc<Expr<T>>, Arc<Expr<T>>),
    Div(Arc<Expr<T>>, Arc<Expr<T>>),
    Pow(Arc<Expr<T>>, i32),
    Func(Func, Arc<Expr<T>>),
}

impl<T: Real> Expr<T> {
    pub fn constant(c: Complex<T>) -> Self {
        Expr::Const(c)
    }

    pub fn real(x: T) -> Self {
        Expr::Const(Complex::new(x, T::zero()))
    }

    pub fn var() -> Self {
        Expr::Var
    }

    pub fn as_const(&self) -> Option<Complex<T>> {
        match self {
            Expr::Const(c) => Some(*c),
            _ => None,
        }
    }

    fn is_const_value(&self, v: T) -> bool {
        matches!(self, Expr::Const(c) if c.re == v && c.im == T::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.is_const_value(T::zero())
    }

    // Folding constructors. Only constants are combined; no other rewriting.

    pub fn add(a: Expr<T>, b: Expr<T>) -> Expr<T> {
        fold_sum(vec![(false, a), (false, b)])
    }

    pub fn sub(a: Expr<T>, b: Expr<T>) -> Expr<T> {
        fold_sum(vec![(false, a), (true, b)])
    }

    pub fn neg(a: Expr<T>) -> Expr<T> {
        Expr::mul(Expr::real(-T::one()), a)
    }

    pub fn mul(a: Expr<T>, b: Expr<T>) -> Expr<T> {
        match (a.as_const(), b.as_const()) {
            (Some(x), Some(y)) => return Expr::Const(x * y),
            (Some(_), None) if a.is_zero() => return Expr::real(T::zero()),
            (None, Some(_)) if b.is_zero() => return Expr::real(T::zero()),
            (Some(_), None) if a.is_const_value(T::one()) => return b,
            (None, Some(_)) if b.is_const_value(T::one()) => return a,
            (None, Some(_)) => return Expr::mul(b, a),
            _ => {}
        }
        if let (Some(x), Expr::Mul(inner_c, inner)) = (a.as_const(), &b) {
            if let Some(y) = inner_c.as_const() {
                return Expr::mul(Expr::Const(x * y), inner.as_ref().clone());
            }
        }
        Expr::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn div(a: Expr<T>, b: Expr<T>) -> Expr<T> {
        if let (Some(x), Some(y)) = (a.as_const(), b.as_const()) {
            if y.re != T::zero() || y.im != T::zero() {
                return Expr::Const(x / y);
            }
        }
        if b.is_const_value(T::one()) {
            return a;
        }
        if a.is_zero() && !b.is_zero() {
            return Expr::real(T::zero());
        }
        Expr::Div(Arc::new(a), Arc::new(b))
    }

    pub fn pow(a: Expr<T>, k: i32) -> Expr<T> {
        if k == 0 {
            return Expr::real(T::one());
        }
        if k == 1 {
            return a;
        }
        if let Some(c) = a.as_const() {
            if let ExtComplex::Finite(v) = ExtComplex::Finite(c).powi(k) {
                return Expr::Const(v);
            }
        }
        if let Expr::Pow(base, j) = &a {
            if let Some(jk) = j.checked_mul(k) {
                return Expr::pow(base.as_ref().clone(), jk);
            }
        }
        Expr::Pow(Arc::new(a), k)
    }

    pub fn func(f: Func, a: Expr<T>) -> Expr<T> {
        if let Some(c) = a.as_const() {
            if let Ok(ExtComplex::Finite(v)) = f.apply(ExtComplex::Finite(c)) {
                return Expr::Const(v);
            }
        }
        Expr::Func(f, Arc::new(a))
    }

    pub fn exp(a: Expr<T>) -> Expr<T> {
        Expr::func(Func::Exp, a)
    }

    /// Evaluates at `z` on the extended plane.
    pub fn eval(&self, z: ExtComplex<T>) -> Result<ExtComplex<T>> {
        match self {
            Expr::Const(c) => Ok(ExtComplex::Finite(*c)),
            Expr::Var => Ok(z),
            Expr::Index => Err(Error::UnboundIndex),
            Expr::Add(a, b) => a.eval(z)?.add(b.eval(z)?),
            Expr::Sub(a, b) => a.eval(z)?.sub(b.eval(z)?),
            Expr::Mul(a, b) => a.eval(z)?.mul(b.eval(z)?),
            Expr::Div(a, b) => a.eval(z)?.div(b.eval(z)?),
            Expr::Pow(a, k) => Ok(a.eval(z)?.powi(*k)),
            Expr::Func(f, a) => f.apply(a.eval(z)?),
        }
    }

    /// Evaluates at a finite point.
    pub fn eval_at(&self, z: Complex<T>) -> Result<ExtComplex<T>> {
        self.eval(ExtComplex::Finite(z))
    }

    /// Replaces every occurrence of `z` by `replacement`, folding constants.
    pub fn substitute(&self, replacement: &Expr<T>) -> Expr<T> {
        self.rebuild(&|node| match node {
            Expr::Var => Some(replacement.clone()),
            _ => None,
        })
    }

    /// Binds the family index `n` to a concrete integer.
    pub fn bind(&self, n: i64) -> Expr<T> {
        let value = Expr::real(T::from_i64(n).expect("index representable"));
        self.rebuild(&|node| match node {
            Expr::Index => Some(value.clone()),
            _ => None,
        })
    }

    /// Rebuilds the tree bottom-up through the folding constructors, with
    /// `leaf` given the chance to replace leaves.
    fn rebuild(&self, leaf: &dyn Fn(&Expr<T>) -> Option<Expr<T>>) -> Expr<T> {
        match self {
            Expr::Const(_) | Expr::Var | Expr::Index => leaf(self).unwrap_or_else(|| self.clone()),
            Expr::Add(a, b) => Expr::add(a.rebuild(leaf), b.rebuild(leaf)),
            Expr::Sub(a, b) => Expr::sub(a.rebuild(leaf), b.rebuild(leaf)),
            Expr::Mul(a, b) => Expr::mul(a.rebuild(leaf), b.rebuild(leaf)),
            Expr::Div(a, b) => Expr::div(a.rebuild(leaf), b.rebuild(leaf)),
            Expr::Pow(a, k) => Expr::pow(a.rebuild(leaf), *k),
            Expr::Func(f, a) => Expr::func(*f, a.rebuild(leaf)),
        }
    }

    /// Constant-folded copy of the tree.
    pub fn folded(&self) -> Expr<T> {
        self.rebuild(&|_| None)
    }

    fn any(&self, pred: &dyn Fn(&Expr<T>) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Expr::Const(_) | Expr::Var | Expr::Index => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.any(pred) || b.any(pred),
            Expr::Pow(a, _) | Expr::Func(_, a) => a.any(pred),
        }
    }

    pub fn has_index(&self) -> bool {
        self.any(&|e| matches!(e, Expr::Index))
    }

    pub fn has_var(&self) -> bool {
        self.any(&|e| matches!(e, Expr::Var))
    }

    /// True when the tree cannot produce a pole anywhere in the finite plane:
    /// no division except by nonzero constants, no negative powers, no `tan`.
    pub fn is_structurally_entire(&self) -> bool {
        !self.any(&|e| match e {
            Expr::Div(_, b) => match b.as_const() {
                Some(c) => c.re == T::zero() && c.im == T::zero(),
                None => true,
            },
            Expr::Pow(_, k) => *k < 0,
            Expr::Func(Func::Tan, _) => true,
            _ => false,
        })
    }

    pub fn node_count(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var | Expr::Index => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                1 + a.node_count() + b.node_count()
            }
            Expr::Pow(a, _) | Expr::Func(_, a) => 1 + a.node_count(),
        }
    }
}

/// Flattens nested sums, combines their constant terms into one (summed in
/// order of appearance) and rebuilds the sum with the constant last.
fn fold_sum<T: Real>(terms: Vec<(bool, Expr<T>)>) -> Expr<T> {
    fn flatten<T: Real>(negated: bool, e: Expr<T>, out: &mut Vec<(bool, Expr<T>)>) {
        match e {
            Expr::Add(a, b) => {
                flatten(negated, a.as_ref().clone(), out);
                flatten(negated, b.as_ref().clone(), out);
            }
            Expr::Sub(a, b) => {
                flatten(negated, a.as_ref().clone(), out);
                flatten(!negated, b.as_ref().clone(), out);
            }
            other => out.push((negated, other)),
        }
    }

    let mut flat = Vec::new();
    for (neg, t) in terms {
        flatten(neg, t, &mut flat);
    }

    let mut constant: Option<Complex<T>> = None;
    let mut rest = Vec::new();
    for (neg, t) in flat {
        match t.as_const() {
            Some(c) => {
                let c = if neg { -c } else { c };
                constant = Some(match constant {
                    Some(acc) => acc + c,
                    None => c,
                });
            }
            None => rest.push((neg, t)),
        }
    }

    let mut iter = rest.into_iter();
    let mut acc = match iter.next() {
        None => return Expr::Const(constant.unwrap_or_else(|| Complex::new(T::zero(), T::zero()))),
        Some((false, t)) => t,
        Some((true, t)) => Expr::mul(Expr::real(-T::one()), t),
    };
    for (neg, t) in iter {
        acc = if neg { Expr::Sub(Arc::new(acc), Arc::new(t)) } else { Expr::Add(Arc::new(acc), Arc::new(t)) };
    }
    match constant {
        Some(c) if c.re != T::zero() || c.im != T::zero() => Expr::Add(Arc::new(acc), Arc::new(Expr::Const(c))),
        _ => acc,
    }
}

impl<T: Real> fmt::Display for Expr<T> {
    /// Fully parenthesised text that parses back to an equivalent tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "({})", ExtComplex::Finite(*c)),
            Expr::Var => write!(f, "z"),
            Expr::Index => write!(f, "n"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
            Expr::Func(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
