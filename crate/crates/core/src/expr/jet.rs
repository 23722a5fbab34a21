//! Truncated Taylor scalars: value, gradient and Hessian carried together.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A scalar together with its exact partial derivatives up to `order`.
///
/// `grad` has `n` entries when `order >= 1` and is empty otherwise; `hess` is
/// the row-major `n × n` Hessian when `order == 2` and empty otherwise.
#[derive(Clone, PartialEq)]
pub struct Jet {
    value: f64,
    grad: Vec<f64>,
    hess: Vec<f64>,
    n: usize,
    order: u8,
}

impl Jet {
    pub fn constant(value: f64, n: usize, order: u8) -> Self {
        assert!(order <= 2, "jet order must be 0, 1 or 2");
        let grad = if order >= 1 { vec![0.0; n] } else { Vec::new() };
        let hess = if order == 2 { vec![0.0; n * n] } else { Vec::new() };
        Jet { value, grad, hess, n, order }
    }

    /// The coordinate function `x_axis`, seeded with a unit gradient.
    pub fn variable(value: f64, axis: usize, n: usize, order: u8) -> Self {
        assert!(axis < n);
        let mut j = Jet::constant(value, n, order);
        if order >= 1 {
            j.grad[axis] = 1.0;
        }
        j
    }

    /// Builds an order-1 jet from explicit parts.
    pub fn first_order(value: f64, grad: Vec<f64>) -> Self {
        let n = grad.len();
        Jet { value, grad, hess: Vec::new(), n, order: 1 }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn grad(&self) -> &[f64] {
        &self.grad
    }

    /// Row-major Hessian, empty below order 2.
    pub fn hess(&self) -> &[f64] {
        &self.hess
    }

    pub fn hess_at(&self, i: usize, j: usize) -> f64 {
        self.hess[i * self.n + j]
    }

    pub fn order(&self) -> u8 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|v| v.is_finite())
            && self.hess.iter().all(|v| v.is_finite())
    }

    /// Drops derivative information above `order`.
    pub fn truncate(&self, order: u8) -> Jet {
        let order = order.min(self.order);
        Jet {
            value: self.value,
            grad: if order >= 1 { self.grad.clone() } else { Vec::new() },
            hess: if order == 2 { self.hess.clone() } else { Vec::new() },
            n: self.n,
            order,
        }
    }

    /// The jet of `∂_axis self`, one order lower.
    pub fn partial(&self, axis: usize) -> Jet {
        assert!(self.order >= 1, "partial of an order-0 jet");
        let order = self.order - 1;
        let grad = if order >= 1 {
            (0..self.n).map(|j| self.hess[axis * self.n + j]).collect()
        } else {
            Vec::new()
        };
        Jet { value: self.grad[axis], grad, hess: Vec::new(), n: self.n, order }
    }

    /// Applies a scalar function given its value and first two derivatives at
    /// `self.value`.
    pub fn chain(&self, f: f64, df: f64, d2f: f64) -> Jet {
        let mut out = Jet::constant(f, self.n, self.order);
        if self.order >= 1 {
            for (o, g) in out.grad.iter_mut().zip(&self.grad) {
                *o = df * g;
            }
        }
        if self.order == 2 {
            let n = self.n;
            for i in 0..n {
                for j in 0..n {
                    out.hess[i * n + j] =
                        df * self.hess[i * n + j] + d2f * self.grad[i] * self.grad[j];
                }
            }
        }
        out
    }

    pub fn recip(&self) -> Jet {
        let v = self.value;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// [`Jet::recip`].
    pub fn powi(&self, exp: i64) -> Jet {
        if exp < 0 {
            return self.powi(-exp).recip();
        }
        let mut result = Jet::constant(1.0, self.n, self.order);
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: f64) -> Jet {
        Jet {
            value: self.value * c,
            grad: self.grad.iter().map(|g| g * c).collect(),
            hess: self.hess.iter().map(|h| h * c).collect(),
            n: self.n,
            order: self.order,
        }
    }

    fn check_compatible(&self, other: &Jet) {
        assert!(
            self.n == other.n && self.order == other.order,
            "jet shape mismatch: ({}, order {}) vs ({}, order {})",
            self.n,
            self.order,
            other.n,
            other.order
        );
    }
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("Jet");
        s.field("value", &self.value);
        if self.order >= 1 {
            s.field("grad", &self.grad);
        }
        if self.order == 2 {
            s.field("hess", &self.hess);
        }
        s.finish()
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, rhs: &'a Jet) -> Jet {
        self.check_compatible(rhs);
        Jet {
            value: self.value + rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a + b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a + b).collect(),
            n: self.n,
            order: self.order,
        }
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, rhs: &'a Jet) -> Jet {
        self.check_compatible(rhs);
        Jet {
            value: self.value - rhs.value,
            grad: self.grad.iter().zip(&rhs.grad).map(|(a, b)| a - b).collect(),
            hess: self.hess.iter().zip(&rhs.hess).map(|(a, b)| a - b).collect(),
            n: self.n,
            order: self.order,
        }
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, rhs: &'a Jet) -> Jet {
        self.check_compatible(rhs);
        let (a, b) = (self.value, rhs.value);
        let mut out = Jet::constant(a * b, self.n, self.order);
        if self.order >= 1 {
            for i in 0..self.n {
                out.grad[i] = self.grad[i] * b + a * rhs.grad[i];
            }
        }
        if self.order == 2 {
            let n = self.n;
            for i in 0..n {
                for j in 0..n {
                    let k = i * n + j;
                    out.hess[k] = self.hess[k] * b
                        + a * rhs.hess[k]
                        + self.grad[i] * rhs.grad[j]
                        + rhs.grad[i] * self.grad[j];
                }
            }
        }
        out
    }
}

impl<'a> Div<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn div(self, rhs: &'a Jet) -> Jet {
        self * &rhs.recip()
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule_second_order() {
        // f = x*y at (2, 3)
        let x = Jet::variable(2.0, 0, 2, 2);
        let y = Jet::variable(3.0, 1, 2, 2);
        let f = &x * &y;
        assert_eq!(f.value(), 6.0);
        assert_eq!(f.grad(), &[3.0, 2.0]);
        assert_eq!(f.hess(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Jet::variable(1.5, 0, 1, 2);
        let p = x.powi(5);
        assert!((p.value() - 1.5f64.powi(5)).abs() < 1e-12);
        assert!((p.grad()[0] - 5.0 * 1.5f64.powi(4)).abs() < 1e-12);
        assert!((p.hess()[0] - 20.0 * 1.5f64.powi(3)).abs() < 1e-12);
        let q = x.powi(-2);
        assert!((q.grad()[0] + 2.0 / 1.5f64.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn partial_lowers_order() {
        let x = Jet::variable(2.0, 0, 2, 2);
        let y = Jet::variable(3.0, 1, 2, 2);
        let f = &(&x * &x) * &y; // x^2 y
        let fx = f.partial(0); // 2xy
        assert_eq!(fx.order(), 1);
        assert_eq!(fx.value(), 12.0);
        assert_eq!(fx.grad(), &[6.0, 4.0]);
    }

    #[test]
    fn order_zero_is_plain_arithmetic() {
        let a = Jet::constant(1.25, 3, 0);
        let b = Jet::constant(-0.5, 3, 0);
        assert_eq!((&a / &b).value(), 1.25 / -0.5);
        assert_eq!((&a * &b).value(), 1.25 * -0.5);
        assert!((&a + &b).grad().is_empty());
    }
}
