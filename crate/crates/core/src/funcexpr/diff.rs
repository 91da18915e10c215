use super::expr::{Expr, Func};
use crate::scalar::Real;

/// Symbolic derivative with respect to `z`, simplified by constant folding only.
pub fn differentiate<T: Real>(f: &Expr<T>) -> Expr<T> {
    match f {
        Expr::Const(_) | Expr::Index => Expr::real(T::zero()),
        Expr::Var => Expr::real(T::one()),
        Expr::Add(a, b) => Expr::add(differentiate(a), differentiate(b)),
        Expr::Sub(a, b) => Expr::sub(differentiate(a), differentiate(b)),
        Expr::Mul(a, b) => {
            Expr::add(Expr::mul(differentiate(a), b.as_ref().clone()), Expr::mul(a.as_ref().clone(), differentiate(b)))
        }
        Expr::Div(a, b) => {
            let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
            let numerator = Expr::sub(Expr::mul(differentiate(&a), b.clone()), Expr::mul(a, differentiate(&b)));
            Expr::div(numerator, Expr::pow(b, 2))
        }
        Expr::Pow(a, k) => {
            let outer = Expr::mul(Expr::real(T::from_i32(*k).expect("exponent")), Expr::pow(a.as_ref().clone(), k - 1));
            Expr::mul(outer, differentiate(a))
        }
        Expr::Func(func, a) => {
            let inner = a.as_ref().clone();
            let outer = match func {
                Func::Exp => Expr::func(Func::Exp, inner),
                Func::Sin => Expr::func(Func::Cos, inner),
                Func::Cos => Expr::neg(Expr::func(Func::Sin, inner)),
                Func::Tan => Expr::pow(Expr::func(Func::Cos, inner), -2),
            };
            Expr::mul(outer, differentiate(a))
        }
    }
}
