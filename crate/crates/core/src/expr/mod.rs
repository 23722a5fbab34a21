//! Scalar expressions over named chart coordinates, evaluated with exact
//! derivatives through [`Jet`] arithmetic.
//!
//! # Grammar
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := primary ('^' unary)?          right-associative
//! primary := number | name | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | tan | exp | log | sqrt | sinh | cosh | tanh
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. `pi` and `e` are
//! constants; `log` is the natural logarithm. A constant integer exponent is
//! evaluated by repeated multiplication and accepts any base; any other
//! exponent needs a strictly positive base.

mod jet;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

pub use jet::Jet;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    EmptyInput,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("invalid coordinate list: {0}")]
    InvalidVariables(String),
    #[error("point has {got} coordinates, expression expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("domain error in `{subexpr}`: {detail}")]
    Domain { subexpr: String, detail: String },
    #[error("derivative order {0} not supported (max 2)")]
    UnsupportedOrder(u8),
    #[error("point coordinate {index} is not finite")]
    NonFinitePoint { index: usize },
    #[error("coordinate `{0}` is not available in the target chart")]
    MissingCoordinate(String),
    #[error("finite-difference step must be positive, got {0}")]
    BadStep(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
    Tanh,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Coord(usize),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    fn has_coords(&self) -> bool {
        match self {
            Node::Const(_) => false,
            Node::Coord(_) => true,
            Node::Neg(a) | Node::Call(_, a) => a.has_coords(),
            Node::Binary(_, a, b) => a.has_coords() || b.has_coords(),
        }
    }

    fn visit_coords(&self, f: &mut impl FnMut(usize)) {
        match self {
            Node::Const(_) => {}
            Node::Coord(i) => f(*i),
            Node::Neg(a) | Node::Call(_, a) => a.visit_coords(f),
            Node::Binary(_, a, b) => {
                a.visit_coords(f);
                b.visit_coords(f);
            }
        }
    }

    fn remap(&self, map: &[usize]) -> Node {
        match self {
            Node::Const(c) => Node::Const(*c),
            Node::Coord(i) => Node::Coord(map[*i]),
            Node::Neg(a) => Node::Neg(Box::new(a.remap(map))),
            Node::Call(f, a) => Node::Call(*f, Box::new(a.remap(map))),
            Node::Binary(op, a, b) => Node::Binary(*op, Box::new(a.remap(map)), Box::new(b.remap(map))),
        }
    }

    fn fmt_with(&self, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Const(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => write!(f, "(-{:?})", -c),
            Node::Const(c) => write!(f, "{c:?}"),
            Node::Coord(i) => f.write_str(&vars[*i]),
            Node::Neg(a) => {
                f.write_str("(-")?;
                a.fmt_with(vars, f)?;
                f.write_str(")")
            }
            Node::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.fmt_with(vars, f)?;
                f.write_str(")")
            }
            Node::Binary(op, a, b) => {
                f.write_str("(")?;
                a.fmt_with(vars, f)?;
                write!(f, " {} ", op.symbol())?;
                b.fmt_with(vars, f)?;
                f.write_str(")")
            }
        }
    }
}

/// A point of a coordinate chart. All coordinates are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Point, ExprError> {
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(ExprError::NonFinitePoint { index });
        }
        Ok(Point(coords))
    }

    /// Panics on non-finite input; meant for literals.
    pub fn of(coords: &[f64]) -> Point {
        Point::new(coords.to_vec()).expect("point coordinates must be finite")
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Copy of the point moved by `delta` along `axis`.
    pub fn shifted(&self, axis: usize, delta: f64) -> Point {
        let mut c = self.0.clone();
        c[axis] += delta;
        Point(c)
    }
}

/// A parsed scalar expression bound to an ordered coordinate list.
///
/// Cloning is cheap; the tree and the coordinate names are shared.
#[derive(Clone)]
pub struct ScalarExpr {
    root: Arc<Node>,
    vars: Arc<[String]>,
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarExpr({self} over {:?})", self.vars)
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt_with(&self.vars, f)
    }
}

pub(crate) fn validate_vars<S: AsRef<str>>(vars: &[S]) -> Result<Arc<[String]>, ExprError> {
    if vars.is_empty() {
        return Err(ExprError::InvalidVariables("coordinate list is empty".into()));
    }
    let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    for (i, name) in names.iter().enumerate() {
        if !parse::is_identifier(name) {
            return Err(ExprError::InvalidVariables(format!("`{name}` is not an identifier")));
        }
        if parse::is_reserved(name) {
            return Err(ExprError::InvalidVariables(format!("`{name}` is a reserved name")));
        }
        if names[..i].contains(name) {
            return Err(ExprError::InvalidVariables(format!("`{name}` appears twice")));
        }
    }
    Ok(names.into())
}

impl ScalarExpr {
    pub fn parse<S: AsRef<str>>(source: &str, vars: &[S]) -> Result<ScalarExpr, ExprError> {
        let vars = validate_vars(vars)?;
        let root = parse::parse_node(source, &vars)?;
        Ok(ScalarExpr { root: Arc::new(root), vars })
    }

    pub(crate) fn parse_shared(source: &str, vars: &Arc<[String]>) -> Result<ScalarExpr, ExprError> {
        let root = parse::parse_node(source, vars)?;
        Ok(ScalarExpr { root: Arc::new(root), vars: vars.clone() })
    }

    pub(crate) fn constant_shared(value: f64, vars: &Arc<[String]>) -> ScalarExpr {
        assert!(value.is_finite(), "expression constants must be finite");
        ScalarExpr { root: Arc::new(Node::Const(value)), vars: vars.clone() }
    }

    pub fn constant<S: AsRef<str>>(value: f64, vars: &[S]) -> Result<ScalarExpr, ExprError> {
        let vars = validate_vars(vars)?;
        if !value.is_finite() {
            return Err(ExprError::Domain { subexpr: format!("{value}"), detail: "constant is not finite".into() });
        }
        Ok(ScalarExpr::constant_shared(value, &vars))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// True when the expression references no coordinate.
    pub fn is_constant(&self) -> bool {
        !self.root.has_coords()
    }

    /// The literal value when the tree is a single constant node.
    pub fn as_literal(&self) -> Option<f64> {
        match *self.root {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Names of the coordinates actually referenced, in chart order.
    pub fn referenced(&self) -> Vec<&str> {
        let mut used = vec![false; self.vars.len()];
        self.root.visit_coords(&mut |i| used[i] = true);
        self.vars.iter().zip(used).filter(|(_, u)| *u).map(|(v, _)| v.as_str()).collect()
    }

    /// Re-expresses the same function over another coordinate list, matching
    /// coordinates by name. Fails if a referenced name is absent.
    pub fn rebind<S: AsRef<str>>(&self, vars: &[S]) -> Result<ScalarExpr, ExprError> {
        let target = validate_vars(vars)?;
        self.rebind_shared(&target)
    }

    pub(crate) fn rebind_shared(&self, target: &Arc<[String]>) -> Result<ScalarExpr, ExprError> {
        let mut map = vec![usize::MAX; self.vars.len()];
        for (i, name) in self.vars.iter().enumerate() {
            if let Some(j) = target.iter().position(|t| t == name) {
                map[i] = j;
            }
        }
        let mut missing = None;
        self.root.visit_coords(&mut |i| {
            if map[i] == usize::MAX && missing.is_none() {
                missing = Some(self.vars[i].clone());
            }
        });
        if let Some(name) = missing {
            return Err(ExprError::MissingCoordinate(name));
        }
        Ok(ScalarExpr { root: Arc::new(self.root.remap(&map)), vars: target.clone() })
    }

    fn check_point(&self, p: &Point) -> Result<(), ExprError> {
        if p.dim() != self.vars.len() {
            return Err(ExprError::DimensionMismatch { expected: self.vars.len(), got: p.dim() });
        }
        Ok(())
    }

    /// Value and exact derivatives up to `order` at `p`.
    pub fn eval_jet(&self, p: &Point, order: u8) -> Result<Jet, ExprError> {
        if order > 2 {
            return Err(ExprError::UnsupportedOrder(order));
        }
        self.check_point(p)?;
        let ctx = EvalCtx { vars: &self.vars, point: p.coords(), order };
        ctx.eval(&self.root)
    }

    pub fn eval(&self, p: &Point) -> Result<f64, ExprError> {
        Ok(self.eval_jet(p, 0)?.value())
    }

    /// Central difference `(e(p + h e_i) − e(p − h e_i)) / 2h`.
    pub fn fd_derivative(&self, p: &Point, axis: usize, step: f64) -> Result<f64, ExprError> {
        if step.is_nan() || step <= 0.0 {
            return Err(ExprError::BadStep(step));
        }
        self.check_point(p)?;
        if axis >= p.dim() {
            return Err(ExprError::DimensionMismatch { expected: self.vars.len(), got: axis + 1 });
        }
        let plus = self.eval(&p.shifted(axis, step))?;
        let minus = self.eval(&p.shifted(axis, -step))?;
        Ok((plus - minus) / (2.0 * step))
    }

    fn combine(&self, op: BinOp, rhs: &ScalarExpr) -> ScalarExpr {
        assert!(
            self.vars == rhs.vars,
            "cannot combine expressions over different coordinate lists {:?} and {:?}",
            self.vars,
            rhs.vars
        );
        ScalarExpr {
            root: Arc::new(Node::Binary(op, Box::new((*self.root).clone()), Box::new((*rhs.root).clone()))),
            vars: self.vars.clone(),
        }
    }

    pub fn powi(&self, exp: i32) -> ScalarExpr {
        ScalarExpr {
            root: Arc::new(Node::Binary(
                BinOp::Pow,
                Box::new((*self.root).clone()),
                Box::new(Node::Const(exp as f64)),
            )),
            vars: self.vars.clone(),
        }
    }
}

// Builder operators. Both operands must share the same coordinate list; a
// mismatch panics.
macro_rules! expr_binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl $tr<&ScalarExpr> for &ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: &ScalarExpr) -> ScalarExpr {
                self.combine($op, rhs)
            }
        }
    };
}

expr_binop!(Add, add, BinOp::Add);
expr_binop!(Sub, sub, BinOp::Sub);
expr_binop!(Mul, mul, BinOp::Mul);
expr_binop!(Div, div, BinOp::Div);

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr { root: Arc::new(Node::Neg(Box::new((*self.root).clone()))), vars: self.vars.clone() }
    }
}

struct EvalCtx<'a> {
    vars: &'a [String],
    point: &'a [f64],
    order: u8,
}

struct Shown<'a>(&'a Node, &'a [String]);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(self.1, f)
    }
}

impl EvalCtx<'_> {
    fn n(&self) -> usize {
        self.point.len()
    }

    fn domain(&self, node: &Node, detail: impl Into<String>) -> ExprError {
        ExprError::Domain { subexpr: Shown(node, self.vars).to_string(), detail: detail.into() }
    }

    fn eval(&self, node: &Node) -> Result<Jet, ExprError> {
        let out = match node {
            Node::Const(c) => Jet::constant(*c, self.n(), self.order),
            Node::Coord(i) => Jet::variable(self.point[*i], *i, self.n(), self.order),
            Node::Neg(a) => -&self.eval(a)?,
            Node::Binary(op, a, b) => self.binary(node, *op, a, b)?,
            Node::Call(func, a) => self.call(node, *func, &self.eval(a)?)?,
        };
        if !out.is_finite() {
            return Err(self.domain(node, "result is not finite"));
        }
        Ok(out)
    }

    fn binary(&self, node: &Node, op: BinOp, a: &Node, b: &Node) -> Result<Jet, ExprError> {
        if op == BinOp::Pow {
            return self.pow(node, a, b);
        }
        let lhs = self.eval(a)?;
        let rhs = self.eval(b)?;
        Ok(match op {
            BinOp::Add => &lhs + &rhs,
            BinOp::Sub => &lhs - &rhs,
            BinOp::Mul => &lhs * &rhs,
            BinOp::Div => {
                if rhs.value() == 0.0 {
                    return Err(self.domain(node, "division by zero"));
                }
                &lhs / &rhs
            }
            BinOp::Pow => unreachable!(),
        })
    }

    fn pow(&self, node: &Node, a: &Node, b: &Node) -> Result<Jet, ExprError> {
        let base = self.eval(a)?;
        if !b.has_coords() {
            let exp = EvalCtx { vars: self.vars, point: self.point, order: 0 }.eval(b)?.value();
            if exp.fract() == 0.0 && exp.abs() <= i32::MAX as f64 {
                let k = exp as i64;
                if k < 0 && base.value() == 0.0 {
                    return Err(self.domain(node, "zero raised to a negative power"));
                }
                return Ok(base.powi(k));
            }
        }
        if base.value() <= 0.0 {
            return Err(self.domain(node, format!("non-integer power of non-positive base {}", base.value())));
        }
        let exp = self.eval(b)?;
        let v = base.value();
        let log = base.chain(v.ln(), 1.0 / v, -1.0 / (v * v));
        let prod = &exp * &log;
        let e = prod.value().exp();
        Ok(prod.chain(e, e, e))
    }

    fn call(&self, node: &Node, func: Func, arg: &Jet) -> Result<Jet, ExprError> {
        let v = arg.value();
        Ok(match func {
            Func::Sin => arg.chain(v.sin(), v.cos(), -v.sin()),
            Func::Cos => arg.chain(v.cos(), -v.sin(), -v.cos()),
            Func::Tan => {
                if v.cos() == 0.0 {
                    return Err(self.domain(node, "tangent pole"));
                }
                let t = v.tan();
                let sec2 = 1.0 + t * t;
                arg.chain(t, sec2, 2.0 * t * sec2)
            }
            Func::Exp => {
                let e = v.exp();
                arg.chain(e, e, e)
            }
            Func::Log => {
                if v <= 0.0 {
                    return Err(self.domain(node, format!("logarithm of non-positive value {v}")));
                }
                arg.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
            }
            Func::Sqrt => {
                if v < 0.0 {
                    return Err(self.domain(node, format!("square root of negative value {v}")));
                }
                if v == 0.0 && self.order > 0 {
                    return Err(self.domain(node, "square root is not differentiable at 0"));
                }
                let s = v.sqrt();
                if self.order == 0 {
                    Jet::constant(s, self.n(), 0)
                } else {
                    arg.chain(s, 0.5 / s, -0.25 / (s * s * s))
                }
            }
            Func::Sinh => arg.chain(v.sinh(), v.cosh(), v.sinh()),
            Func::Cosh => arg.chain(v.cosh(), v.sinh(), v.cosh()),
            Func::Tanh => {
                let t = v.tanh();
                let d = 1.0 - t * t;
                arg.chain(t, d, -2.0 * t * d)
            }
        })
    }
}

/// Numeric carrier for pointwise geometry: either a plain `f64` or an
/// order-1 [`Jet`] when first derivatives of the result are wanted.
pub trait Scalar:
    Clone
    + Send
    + Sync
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Derivative order carried by one value of this type.
    const CARRIED_ORDER: u8;

    /// Reads a value from a jet of order at least `CARRIED_ORDER`.
    fn from_jet(j: &Jet) -> Self;

    /// Reads `∂_axis` from a jet of order at least `CARRIED_ORDER + 1`.
    fn partial_from_jet(j: &Jet, axis: usize) -> Self;

    /// A constant with the same shape as `self`.
    fn constant_like(&self, c: f64) -> Self;

    /// The underlying real value.
    fn re(&self) -> f64;
}

impl Scalar for f64 {
    const CARRIED_ORDER: u8 = 0;

    fn from_jet(j: &Jet) -> f64 {
        j.value()
    }

    fn partial_from_jet(j: &Jet, axis: usize) -> f64 {
        j.grad()[axis]
    }

    fn constant_like(&self, c: f64) -> f64 {
        c
    }

    fn re(&self) -> f64 {
        *self
    }
}

impl Scalar for Jet {
    const CARRIED_ORDER: u8 = 1;

    fn from_jet(j: &Jet) -> Jet {
        j.truncate(1)
    }

    fn partial_from_jet(j: &Jet, axis: usize) -> Jet {
        j.partial(axis).truncate(1)
    }

    fn constant_like(&self, c: f64) -> Jet {
        Jet::constant(c, self.nvars(), self.order())
    }

    fn re(&self) -> f64 {
        self.value()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rt() -> Vec<&'static str> {
        vec!["r", "θ"]
    }

    #[test]
    fn square_evaluates() {
        let e = ScalarExpr::parse("r^2", &rt()).unwrap();
        assert_eq!(e.eval(&Point::of(&[3.0, 0.0])).unwrap(), 9.0);
    }

    #[test]
    fn sin_half_pi() {
        let e = ScalarExpr::parse("sin(pi/2)", &["x"]).unwrap();
        assert_eq!(e.eval(&Point::of(&[0.7])).unwrap(), 1.0);
    }

    #[test]
    fn trailing_operator_is_syntax_error() {
        let err = ScalarExpr::parse("x1 + ", &["x1"]).unwrap_err();
        match err {
            ExprError::Syntax { pos, .. } => assert_eq!(pos, 5),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors() {
        assert_eq!(ScalarExpr::parse("   ", &["x"]).unwrap_err(), ExprError::EmptyInput);
        assert!(matches!(
            ScalarExpr::parse("x + y", &["x"]).unwrap_err(),
            ExprError::UnknownIdentifier { pos: 4, .. }
        ));
        assert!(matches!(ScalarExpr::parse("(x", &["x"]).unwrap_err(), ExprError::Syntax { .. }));
        assert!(matches!(ScalarExpr::parse("sin x", &["x"]).unwrap_err(), ExprError::Syntax { .. }));
        assert!(matches!(ScalarExpr::parse("x $ 2", &["x"]).unwrap_err(), ExprError::Syntax { pos: 2, .. }));
        assert!(ScalarExpr::parse("x", &["x", "x"]).is_err());
        assert!(ScalarExpr::parse("x", &["sin"]).is_err());
        assert!(ScalarExpr::parse("x", &[] as &[&str]).is_err());
    }

    #[test]
    fn precedence_and_associativity() {
        let p = Point::of(&[2.0]);
        let ev = |s: &str| ScalarExpr::parse(s, &["x"]).unwrap().eval(&p).unwrap();
        assert_eq!(ev("-x^2"), -4.0);
        assert_eq!(ev("2^3^2"), 512.0);
        assert_eq!(ev("8/4/2"), 1.0);
        assert_eq!(ev("8-4-2"), 2.0);
        assert_eq!(ev("1+2*3"), 7.0);
        assert_eq!(ev("2^-1"), 0.5);
        assert_eq!(ev("1e-1*10"), 1.0);
        assert!((ev("2*e") - 2.0 * std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn jet_of_square() {
        let e = ScalarExpr::parse("r^2", &rt()).unwrap();
        let j = e.eval_jet(&Point::of(&[3.0, 1.0]), 2).unwrap();
        assert_eq!(j.value(), 9.0);
        assert_eq!(j.grad(), &[6.0, 0.0]);
        assert_eq!(j.hess(), &[2.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn jet_of_exponential() {
        let e = ScalarExpr::parse("exp(2*r)", &rt()).unwrap();
        let j = e.eval_jet(&Point::of(&[0.0, 0.0]), 1).unwrap();
        assert_eq!(j.value(), 1.0);
        assert_eq!(j.grad(), &[2.0, 0.0]);
    }

    #[test]
    fn jet_of_polar_coordinate() {
        // Expected values frozen from the finite-difference oracle at step 1e-5.
        let e = ScalarExpr::parse("r*sin(θ)", &rt()).unwrap();
        let p = Point::of(&[2.0, PI / 6.0]);
        let fd0 = e.fd_derivative(&p, 0, 1e-5).unwrap();
        let fd1 = e.fd_derivative(&p, 1, 1e-5).unwrap();
        let j = e.eval_jet(&p, 1).unwrap();
        assert!((j.value() - 1.0).abs() < 1e-15);
        assert!((j.grad()[0] - 0.5).abs() < 1e-15);
        assert!((j.grad()[1] - 2.0 * (PI / 6.0).cos()).abs() < 1e-15);
        assert!((j.grad()[0] - fd0).abs() < 1e-9);
        assert!((j.grad()[1] - fd1).abs() < 1e-9);
    }

    #[test]
    fn finite_differences() {
        let e = ScalarExpr::parse("r^2", &rt()).unwrap();
        assert!((e.fd_derivative(&Point::of(&[3.0, 0.0]), 0, 1e-5).unwrap() - 6.0).abs() < 1e-9);
        let s = ScalarExpr::parse("sin(θ)", &rt()).unwrap();
        assert!((s.fd_derivative(&Point::of(&[0.0, 0.0]), 1, 1e-5).unwrap() - 1.0).abs() < 1e-10);
        assert!(matches!(s.fd_derivative(&Point::of(&[0.0, 0.0]), 1, 0.0), Err(ExprError::BadStep(_))));
        let l = ScalarExpr::parse("log(r)", &rt()).unwrap();
        assert!(matches!(l.fd_derivative(&Point::of(&[1e-6, 0.0]), 0, 1e-5), Err(ExprError::Domain { .. })));
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let e = ScalarExpr::parse("1 + log(x - 2)", &["x"]).unwrap();
        match e.eval(&Point::of(&[1.0])).unwrap_err() {
            ExprError::Domain { subexpr, .. } => assert_eq!(subexpr, "log((x - 2.0))"),
            other => panic!("{other:?}"),
        }
        let e = ScalarExpr::parse("1/(x-1)", &["x"]).unwrap();
        assert!(matches!(e.eval(&Point::of(&[1.0])), Err(ExprError::Domain { .. })));
        let e = ScalarExpr::parse("sqrt(x)", &["x"]).unwrap();
        assert!(e.eval(&Point::of(&[-1.0])).is_err());
        assert_eq!(e.eval(&Point::of(&[0.0])).unwrap(), 0.0);
        assert!(e.eval_jet(&Point::of(&[0.0]), 1).is_err());
        let e = ScalarExpr::parse("x^0.5", &["x"]).unwrap();
        assert!(e.eval(&Point::of(&[-4.0])).is_err());
        let e = ScalarExpr::parse("x^3", &["x"]).unwrap();
        assert_eq!(e.eval(&Point::of(&[-2.0])).unwrap(), -8.0);
        let e = ScalarExpr::parse("x^-1", &["x"]).unwrap();
        assert!(e.eval(&Point::of(&[0.0])).is_err());
    }

    #[test]
    fn general_power_derivative() {
        let e = ScalarExpr::parse("x^y", &["x", "y"]).unwrap();
        let j = e.eval_jet(&Point::of(&[2.0, 1.5]), 2).unwrap();
        let v = 2f64.powf(1.5);
        assert!((j.value() - v).abs() < 1e-14);
        assert!((j.grad()[0] - 1.5 * 2f64.powf(0.5)).abs() < 1e-13);
        assert!((j.grad()[1] - v * 2f64.ln()).abs() < 1e-13);
        assert!((j.hess_at(0, 1) - j.hess_at(1, 0)).abs() < 1e-15);
    }

    #[test]
    fn quadratic_hessian_is_constant() {
        let e = ScalarExpr::parse("3*x^2 - 2*x*y + 0.5*y^2 + x - 7", &["x", "y"]).unwrap();
        let h0 = e.eval_jet(&Point::of(&[0.1, -2.0]), 2).unwrap();
        let h1 = e.eval_jet(&Point::of(&[5.0, 3.3]), 2).unwrap();
        assert_eq!(h0.hess(), h1.hess());
        assert_eq!(h0.hess(), &[6.0, -2.0, -2.0, 1.0]);
    }

    #[test]
    fn rebind_by_name() {
        let e = ScalarExpr::parse("r*2", &["r"]).unwrap();
        let lifted = e.rebind(&["r", "θ"]).unwrap();
        assert_eq!(lifted.eval(&Point::of(&[1.5, 9.0])).unwrap(), 3.0);
        let wrong = ScalarExpr::parse("θ", &["θ"]).unwrap();
        assert_eq!(wrong.rebind(&["r"]).unwrap_err(), ExprError::MissingCoordinate("θ".into()));
    }

    #[test]
    fn display_round_trips() {
        let e = ScalarExpr::parse("-x^2 + sin(y)/3 - 2^-x*1e-7", &["x", "y"]).unwrap();
        let again = ScalarExpr::parse(&e.to_string(), &["x", "y"]).unwrap();
        let p = Point::of(&[0.3, -1.1]);
        assert_eq!(e.eval(&p).unwrap(), again.eval(&p).unwrap());
        let c = ScalarExpr::constant(-2.5, &["x"]).unwrap();
        assert_eq!(ScalarExpr::parse(&c.to_string(), &["x"]).unwrap().eval(&Point::of(&[0.0])).unwrap(), -2.5);
    }

    #[test]
    fn dimension_mismatch() {
        let e = ScalarExpr::parse("x", &["x"]).unwrap();
        assert!(matches!(e.eval(&Point::of(&[1.0, 2.0])), Err(ExprError::DimensionMismatch { .. })));
        assert!(matches!(e.eval_jet(&Point::of(&[1.0]), 3), Err(ExprError::UnsupportedOrder(3))));
    }
}
