//! Pointwise Riemannian machinery on a single coordinate chart.
//!
//! Connections are represented by their coefficients `Γ̃ᵏᵢⱼ` with
//! `(∇_X Y)ᵏ = Xⁱ∂ᵢYᵏ + Γ̃ᵏᵢⱼXⁱYʲ`: the first lower index is the direction
//! of differentiation and the second is the argument.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{validate_vars, Jet, Point, Scalar, ScalarExpr};
use crate::linalg::{dot, inner, Coefficients, Mat, Matrix};

/// A chart of dimension `n` with a symmetric matrix of metric components.
/// Only the upper triangle is stored.
#[derive(Debug, Clone)]
pub struct ChartMetric {
    names: Arc<[String]>,
    upper: Vec<ScalarExpr>,
}

fn upper_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

/// Metric values and first partials at a point, over a [`Scalar`] carrier.
pub(crate) struct MetricEval<S> {
    pub g: Mat<S>,
    pub ginv: Mat<S>,
    /// `dg[l] = ∂ₗ g`.
    pub dg: Vec<Mat<S>>,
}

impl ChartMetric {
    /// Parses a full square matrix of component strings. Entry `(j,i)` must
    /// print identically to `(i,j)`.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(names: &[S], rows: &[Vec<T>]) -> Result<ChartMetric> {
        let names = validate_vars(names)?;
        let n = names.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension { what: "metric matrix".into(), expected: n, got: rows.len() });
        }
        let mut parsed = Vec::with_capacity(n);
        for row in rows {
            let r: Result<Vec<ScalarExpr>> =
                row.iter().map(|s| Ok(ScalarExpr::parse_shared(s.as_ref(), &names)?)).collect();
            parsed.push(r?);
        }
        ChartMetric::from_exprs(&names, parsed)
    }

    /// Diagonal metric from its diagonal entries.
    pub fn diagonal<S: AsRef<str>, T: AsRef<str>>(names: &[S], diag: &[T]) -> Result<ChartMetric> {
        let n = diag.len();
        let rows: Vec<Vec<&str>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { diag[i].as_ref() } else { "0" }).collect()).collect();
        ChartMetric::new(names, &rows)
    }

    pub(crate) fn from_exprs(names: &Arc<[String]>, rows: Vec<Vec<ScalarExpr>>) -> Result<ChartMetric> {
        let n = names.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension { what: "metric matrix".into(), expected: n, got: rows.len() });
        }
        let mut upper = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                if rows[i][j].vars() != &names[..] || rows[j][i].vars() != &names[..] {
                    return Err(Error::ChartMismatch(format!("metric entry ({i},{j})")));
                }
                if rows[i][j].to_string() != rows[j][i].to_string() {
                    return Err(Error::AsymmetricMetric { i, j });
                }
                upper.push(rows[i][j].clone());
            }
        }
        Ok(ChartMetric { names: names.clone(), upper })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub(crate) fn shared_names(&self) -> &Arc<[String]> {
        &self.names
    }

    pub fn component(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.upper[upper_index(self.dim(), i, j)]
    }

    fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::Dimension { what: "point".into(), expected: self.dim(), got: p.dim() });
        }
        Ok(())
    }

    /// Component values only, with a positive-definiteness check.
    pub fn values_at(&self, p: &Point) -> Result<Matrix> {
        self.check_point(p)?;
        let n = self.dim();
        let mut vals = vec![0.0; self.upper.len()];
        for (v, e) in vals.iter_mut().zip(&self.upper) {
            *v = e.eval(p)?;
        }
        let g = Mat::from_fn(n, |i, j| vals[upper_index(n, i, j)]);
        if let Err(k) = g.cholesky_check() {
            return Err(Error::NotPositiveDefinite {
                point: p.coords().to_vec(),
                detail: format!("leading pivot {k} is not positive"),
            });
        }
        Ok(g)
    }

    pub(crate) fn eval<S: Scalar>(&self, p: &Point) -> Result<MetricEval<S>> {
        self.check_point(p)?;
        let n = self.dim();
        let order = S::CARRIED_ORDER + 1;
        let jets: Vec<Jet> = self.upper.iter().map(|e| e.eval_jet(p, order)).collect::<Result<_, _>>()?;
        let g: Mat<S> = Mat::from_fn(n, |i, j| S::from_jet(&jets[upper_index(n, i, j)]));
        if let Err(k) = g.map_re().cholesky_check() {
            return Err(Error::NotPositiveDefinite {
                point: p.coords().to_vec(),
                detail: format!("leading pivot {k} is not positive"),
            });
        }
        let ginv = g.inverse().ok_or_else(|| Error::Singular { point: p.coords().to_vec() })?;
        let dg = (0..n)
            .map(|l| Mat::from_fn(n, |i, j| S::partial_from_jet(&jets[upper_index(n, i, j)], l)))
            .collect();
        Ok(MetricEval { g, ginv, dg })
    }
}

/// Levi-Civita coefficients `Γᵏᵢⱼ = ½ gᵏˡ(∂ᵢgⱼₗ + ∂ⱼgᵢₗ − ∂ₗgᵢⱼ)`, symmetric in
/// `(i, j)` by construction.
pub(crate) fn levi_civita<S: Scalar>(me: &MetricEval<S>) -> Coefficients<S> {
    let n = me.g.dim();
    let zero = me.g[(0, 0)].constant_like(0.0);
    let half = me.g[(0, 0)].constant_like(0.5);
    let mut first = vec![zero.clone(); n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                first[(l * n + i) * n + j] = half.clone()
                    * (me.dg[i][(j, l)].clone() + me.dg[j][(i, l)].clone() - me.dg[l][(i, j)].clone());
            }
        }
    }
    let mut out = Coefficients::from_fn(n, |_, _, _| zero.clone());
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = zero.clone();
                for l in 0..n {
                    acc = acc + me.ginv[(k, l)].clone() * first[(l * n + i) * n + j].clone();
                }
                out[(k, j, i)] = acc.clone();
                out[(k, i, j)] = acc;
            }
        }
    }
    out
}

/// `g` and `g⁻¹` at `p`; fails unless `g` is positive definite there.
pub fn metric_at(m: &ChartMetric, p: &Point) -> Result<(Matrix, Matrix)> {
    let g = m.values_at(p)?;
    let ginv = g.inverse().ok_or_else(|| Error::Singular { point: p.coords().to_vec() })?;
    Ok((g, ginv))
}

pub fn christoffel_at(m: &ChartMetric, p: &Point) -> Result<Coefficients<f64>> {
    Ok(levi_civita(&m.eval::<f64>(p)?))
}

/// A vector field `X = Xⁱ∂ᵢ` with expression components.
#[derive(Debug, Clone)]
pub struct VectorField {
    comps: Vec<ScalarExpr>,
}

/// Values and Jacobian of a vector field at a point;
/// `jacobian[k * n + i] = ∂ᵢXᵏ`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldJet {
    pub value: Vec<f64>,
    pub jacobian: Vec<f64>,
}

impl FieldJet {
    pub fn dim(&self) -> usize {
        self.value.len()
    }

    /// `Xⁱ∂ᵢYᵏ` for `self = Y`.
    pub fn derivative_along(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n).map(|k| dot(&self.jacobian[k * n..(k + 1) * n], x)).collect()
    }

    /// A field with constant components `v`.
    pub fn constant(v: Vec<f64>) -> FieldJet {
        let n = v.len();
        FieldJet { value: v, jacobian: vec![0.0; n * n] }
    }
}

impl VectorField {
    pub fn parse<S: AsRef<str>, T: AsRef<str>>(comps: &[T], vars: &[S]) -> Result<VectorField> {
        let vars = validate_vars(vars)?;
        Self::parse_shared(comps, &vars)
    }

    pub(crate) fn parse_shared<T: AsRef<str>>(comps: &[T], vars: &Arc<[String]>) -> Result<VectorField> {
        if comps.len() != vars.len() {
            return Err(Error::Dimension { what: "vector field".into(), expected: vars.len(), got: comps.len() });
        }
        let comps =
            comps.iter().map(|c| ScalarExpr::parse_shared(c.as_ref(), vars)).collect::<Result<Vec<_>, _>>()?;
        Ok(VectorField { comps })
    }

    pub fn from_exprs(comps: Vec<ScalarExpr>) -> Result<VectorField> {
        let Some(first) = comps.first() else {
            return Err(Error::Dimension { what: "vector field".into(), expected: 1, got: 0 });
        };
        if comps.len() != first.dim() {
            return Err(Error::Dimension { what: "vector field".into(), expected: first.dim(), got: comps.len() });
        }
        if comps.iter().any(|c| c.vars() != first.vars()) {
            return Err(Error::ChartMismatch("vector field components".into()));
        }
        Ok(VectorField { comps })
    }

    pub(crate) fn constant_shared(values: &[f64], vars: &Arc<[String]>) -> VectorField {
        VectorField { comps: values.iter().map(|v| ScalarExpr::constant_shared(*v, vars)).collect() }
    }

    /// The coordinate field `∂_axis`.
    pub fn coordinate<S: AsRef<str>>(axis: usize, vars: &[S]) -> Result<VectorField> {
        let vars = validate_vars(vars)?;
        if axis >= vars.len() {
            return Err(Error::Dimension { what: "coordinate axis".into(), expected: vars.len(), got: axis + 1 });
        }
        Ok(Self::coordinate_shared(axis, &vars))
    }

    pub(crate) fn coordinate_shared(axis: usize, vars: &Arc<[String]>) -> VectorField {
        let v: Vec<f64> = (0..vars.len()).map(|i| if i == axis { 1.0 } else { 0.0 }).collect();
        Self::constant_shared(&v, vars)
    }

    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Result<VectorField> {
        let vars = validate_vars(vars)?;
        Ok(Self::constant_shared(&vec![0.0; vars.len()], &vars))
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn vars(&self) -> &[String] {
        self.comps[0].vars()
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.comps
    }

    pub fn value_at(&self, p: &Point) -> Result<Vec<f64>> {
        Ok(self.comps.iter().map(|c| c.eval(p)).collect::<Result<_, _>>()?)
    }

    pub fn jet_at(&self, p: &Point) -> Result<FieldJet> {
        let n = self.dim();
        let mut value = Vec::with_capacity(n);
        let mut jacobian = Vec::with_capacity(n * n);
        for c in &self.comps {
            let j = c.eval_jet(p, 1)?;
            value.push(j.value());
            jacobian.extend_from_slice(j.grad());
        }
        Ok(FieldJet { value, jacobian })
    }

    pub(crate) fn eval<S: Scalar>(&self, p: &Point) -> Result<Vec<S>> {
        self.comps.iter().map(|c| Ok(S::from_jet(&c.eval_jet(p, S::CARRIED_ORDER)?))).collect()
    }

    /// `f · X`.
    pub fn scaled_by(&self, f: &ScalarExpr) -> VectorField {
        VectorField { comps: self.comps.iter().map(|c| f * c).collect() }
    }

    pub fn rebind_shared(&self, vars: &Arc<[String]>) -> Result<VectorField> {
        Ok(VectorField { comps: self.comps.iter().map(|c| c.rebind_shared(vars)).collect::<Result<_, _>>()? })
    }
}

/// A (1,1) tensor field; component `(k, i)` is `φᵏᵢ`, so `(φX)ᵏ = φᵏᵢXⁱ`.
#[derive(Debug, Clone)]
pub struct Tensor11Field {
    n: usize,
    comps: Vec<ScalarExpr>,
}

impl Tensor11Field {
    pub fn parse<S: AsRef<str>, T: AsRef<str>>(rows: &[Vec<T>], vars: &[S]) -> Result<Tensor11Field> {
        let vars = validate_vars(vars)?;
        Self::parse_shared(rows, &vars)
    }

    pub(crate) fn parse_shared<T: AsRef<str>>(rows: &[Vec<T>], vars: &Arc<[String]>) -> Result<Tensor11Field> {
        let n = vars.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension { what: "(1,1) tensor".into(), expected: n, got: rows.len() });
        }
        let mut comps = Vec::with_capacity(n * n);
        for row in rows {
            for c in row {
                comps.push(ScalarExpr::parse_shared(c.as_ref(), vars)?);
            }
        }
        Ok(Tensor11Field { n, comps })
    }

    pub(crate) fn constant_shared(m: &Matrix, vars: &Arc<[String]>) -> Tensor11Field {
        Tensor11Field { n: m.dim(), comps: m.as_slice().iter().map(|v| ScalarExpr::constant_shared(*v, vars)).collect() }
    }

    pub fn identity<S: AsRef<str>>(vars: &[S]) -> Result<Tensor11Field> {
        let vars = validate_vars(vars)?;
        Ok(Self::constant_shared(&Matrix::identity(vars.len()), &vars))
    }

    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Result<Tensor11Field> {
        let vars = validate_vars(vars)?;
        Ok(Self::constant_shared(&Mat::from_fn(vars.len(), |_, _| 0.0), &vars))
    }

    /// Builds from expressions laid out as `rows[k][i] = φᵏᵢ`.
    pub fn from_exprs(rows: Vec<Vec<ScalarExpr>>) -> Result<Tensor11Field> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension { what: "(1,1) tensor".into(), expected: n.max(1), got: 0 });
        }
        let vars = rows[0][0].vars().to_vec();
        if vars.len() != n {
            return Err(Error::Dimension { what: "(1,1) tensor".into(), expected: vars.len(), got: n });
        }
        let comps: Vec<ScalarExpr> = rows.into_iter().flatten().collect();
        if comps.iter().any(|c| c.vars() != &vars[..]) {
            return Err(Error::ChartMismatch("(1,1) tensor components".into()));
        }
        Ok(Tensor11Field { n, comps })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &[String] {
        self.comps[0].vars()
    }

    pub fn component(&self, k: usize, i: usize) -> &ScalarExpr {
        &self.comps[k * self.n + i]
    }

    pub fn value_at(&self, p: &Point) -> Result<Matrix> {
        let vals: Vec<f64> = self.comps.iter().map(|c| c.eval(p)).collect::<Result<_, _>>()?;
        Ok(Mat::from_fn(self.n, |k, i| vals[k * self.n + i]))
    }

    pub(crate) fn eval<S: Scalar>(&self, p: &Point) -> Result<Mat<S>> {
        let vals: Vec<S> =
            self.comps.iter().map(|c| Ok(S::from_jet(&c.eval_jet(p, S::CARRIED_ORDER)?))).collect::<Result<_>>()?;
        Ok(Mat::from_fn(self.n, |k, i| vals[k * self.n + i].clone()))
    }
}

/// A linear connection on a chart, given by its coefficient field.
pub trait Connection: Sync {
    fn dim(&self) -> usize;

    fn coefficients_at(&self, p: &Point) -> Result<Coefficients<f64>>;

    /// Coefficients carried as order-1 jets, giving `∂ₗΓ̃ᵏᵢⱼ` in the gradients.
    fn coefficient_jets_at(&self, p: &Point) -> Result<Coefficients<Jet>>;
}

/// The Levi-Civita connection of a chart metric.
#[derive(Debug, Clone)]
pub struct LeviCivita {
    metric: ChartMetric,
}

impl LeviCivita {
    pub fn new(metric: &ChartMetric) -> LeviCivita {
        LeviCivita { metric: metric.clone() }
    }
}

impl Connection for LeviCivita {
    fn dim(&self) -> usize {
        self.metric.dim()
    }

    fn coefficients_at(&self, p: &Point) -> Result<Coefficients<f64>> {
        christoffel_at(&self.metric, p)
    }

    fn coefficient_jets_at(&self, p: &Point) -> Result<Coefficients<Jet>> {
        Ok(levi_civita(&self.metric.eval::<Jet>(p)?))
    }
}

/// `(∇_X Y)ᵏ = Xⁱ∂ᵢYᵏ + Γ̃ᵏᵢⱼXⁱYʲ` from precomputed pieces.
pub fn covariant(coeffs: &Coefficients<f64>, x: &[f64], y: &FieldJet) -> Vec<f64> {
    let n = coeffs.dim();
    let mut out = y.derivative_along(x);
    for (k, o) in out.iter_mut().enumerate() {
        for i in 0..n {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                *o += coeffs[(k, i, j)] * x[i] * y.value[j];
            }
        }
    }
    out
}

fn check_field(what: &str, f: &VectorField, n: usize) -> Result<()> {
    if f.dim() != n {
        return Err(Error::Dimension { what: what.into(), expected: n, got: f.dim() });
    }
    Ok(())
}

/// `[X,Y]ᵏ = Xⁱ∂ᵢYᵏ − Yⁱ∂ᵢXᵏ`.
pub fn lie_bracket_at(x: &VectorField, y: &VectorField, p: &Point) -> Result<Vec<f64>> {
    check_field("bracket argument", y, x.dim())?;
    let xj = x.jet_at(p)?;
    let yj = y.jet_at(p)?;
    Ok(bracket(&xj, &yj))
}

pub fn bracket(x: &FieldJet, y: &FieldJet) -> Vec<f64> {
    let a = y.derivative_along(&x.value);
    let b = x.derivative_along(&y.value);
    a.iter().zip(&b).map(|(u, v)| u - v).collect()
}

pub fn cov_deriv_at(conn: &dyn Connection, x: &VectorField, y: &VectorField, p: &Point) -> Result<Vec<f64>> {
    check_field("direction", x, conn.dim())?;
    check_field("argument", y, conn.dim())?;
    let coeffs = conn.coefficients_at(p)?;
    Ok(covariant(&coeffs, &x.value_at(p)?, &y.jet_at(p)?))
}

/// `(grad h)ⁱ = gⁱʲ∂ⱼh`.
pub fn gradient_at(m: &ChartMetric, h: &ScalarExpr, p: &Point) -> Result<Vec<f64>> {
    if h.vars() != m.names() {
        return Err(Error::ChartMismatch("gradient: function is not over the chart's coordinates".into()));
    }
    let (_, ginv) = metric_at(m, p)?;
    let dh = h.eval_jet(p, 1)?;
    Ok(ginv.mul_vec(dh.grad()))
}

/// Split of `φ` into its `g`-symmetric and `g`-skew parts.
#[derive(Debug, Clone)]
pub(crate) struct PhiSplit<S> {
    pub phi1: Mat<S>,
    pub phi2: Mat<S>,
    /// `Φ₁ᵢⱼ = g(φ₁∂ᵢ, ∂ⱼ)`.
    pub sym: Mat<S>,
}

/// `Φᵢⱼ = gₖⱼφᵏᵢ`, `Φ₁ = ½(Φ+Φᵀ)`, `φ₁ᵏᵢ = gᵏʲΦ₁ᵢⱼ`, `φ₂ = φ − φ₁`.
pub(crate) fn split_phi<S: Scalar>(g: &Mat<S>, ginv: &Mat<S>, phi: &Mat<S>) -> PhiSplit<S> {
    let n = g.dim();
    let half = g[(0, 0)].constant_like(0.5);
    // Φ = φᵀ g
    let big = phi.transpose().mul_mat(g);
    let sym = Mat::from_fn(n, |i, j| half.clone() * (big[(i, j)].clone() + big[(j, i)].clone()));
    // φ₁ᵏᵢ = gᵏʲ Φ₁ᵢⱼ, i.e. φ₁ = g⁻¹ Φ₁ᵀ = g⁻¹ Φ₁
    let phi1 = ginv.mul_mat(&sym);
    let phi2 = Mat::from_fn(n, |k, i| phi[(k, i)].clone() - phi1[(k, i)].clone());
    PhiSplit { phi1, phi2, sym }
}

pub fn sym_skew_split_at(m: &ChartMetric, phi: &Tensor11Field, p: &Point) -> Result<(Matrix, Matrix)> {
    if phi.dim() != m.dim() {
        return Err(Error::Dimension { what: "(1,1) tensor".into(), expected: m.dim(), got: phi.dim() });
    }
    let (g, ginv) = metric_at(m, p)?;
    let s = split_phi(&g, &ginv, &phi.value_at(p)?);
    Ok((s.phi1, s.phi2))
}

/// `T(X,Y) = ∇_X Y − ∇_Y X − [X,Y]`, evaluated literally.
pub fn torsion_at(conn: &dyn Connection, x: &VectorField, y: &VectorField, p: &Point) -> Result<Vec<f64>> {
    check_field("torsion argument", x, conn.dim())?;
    check_field("torsion argument", y, conn.dim())?;
    let coeffs = conn.coefficients_at(p)?;
    let (xj, yj) = (x.jet_at(p)?, y.jet_at(p)?);
    Ok(torsion(&coeffs, &xj, &yj))
}

pub fn torsion(coeffs: &Coefficients<f64>, x: &FieldJet, y: &FieldJet) -> Vec<f64> {
    let a = covariant(coeffs, &x.value, y);
    let b = covariant(coeffs, &y.value, x);
    let c = bracket(x, y);
    (0..a.len()).map(|k| a[k] - b[k] - c[k]).collect()
}

/// The scalar field `g(Y,Z)` as an order-1 jet.
pub fn inner_jet(m: &ChartMetric, y: &VectorField, z: &VectorField, p: &Point) -> Result<Jet> {
    let n = m.dim();
    check_field("inner product argument", y, n)?;
    check_field("inner product argument", z, n)?;
    let ys: Vec<Jet> = y.components().iter().map(|c| c.eval_jet(p, 1)).collect::<Result<_, _>>()?;
    let zs: Vec<Jet> = z.components().iter().map(|c| c.eval_jet(p, 1)).collect::<Result<_, _>>()?;
    let mut acc = Jet::constant(0.0, n, 1);
    for i in 0..n {
        for j in 0..n {
            let gij = m.component(i, j).eval_jet(p, 1)?;
            acc = &acc + &(&(&gij * &ys[i]) * &zs[j]);
        }
    }
    Ok(acc)
}

/// `(∇_X g)(Y,Z) = X·g(Y,Z) − g(∇_X Y, Z) − g(Y, ∇_X Z)`, with `X·g(Y,Z)`
/// obtained by differentiating the assembled scalar.
pub fn nonmetricity_at(
    conn: &dyn Connection,
    m: &ChartMetric,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
    p: &Point,
) -> Result<f64> {
    check_field("direction", x, conn.dim())?;
    let (g, _) = metric_at(m, p)?;
    let coeffs = conn.coefficients_at(p)?;
    let xv = x.value_at(p)?;
    let (yj, zj) = (y.jet_at(p)?, z.jet_at(p)?);
    let dg = dot(inner_jet(m, y, z, p)?.grad(), &xv);
    Ok(dg - inner(&g, &covariant(&coeffs, &xv, &yj), &zj.value) - inner(&g, &yj.value, &covariant(&coeffs, &xv, &zj)))
}

/// Riemann components `R[l][k][i][j]` with `R(∂ᵢ,∂ⱼ)∂ₖ = Rˡₖᵢⱼ∂ₗ`.
#[derive(Debug, Clone)]
pub struct Riemann {
    n: usize,
    data: Vec<f64>,
}

impl Riemann {
    pub fn get(&self, l: usize, k: usize, i: usize, j: usize) -> f64 {
        let n = self.n;
        self.data[((l * n + k) * n + i) * n + j]
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `R(X,Y)Z`.
    pub fn apply(&self, x: &[f64], y: &[f64], z: &[f64]) -> Vec<f64> {
        let n = self.n;
        (0..n)
            .map(|l| {
                let mut s = 0.0;
                for k in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            s += self.get(l, k, i, j) * x[i] * y[j] * z[k];
                        }
                    }
                }
                s
            })
            .collect()
    }
}

/// `Rˡₖᵢⱼ = ∂ᵢΓ̃ˡⱼₖ − ∂ⱼΓ̃ˡᵢₖ + Γ̃ˡᵢₘΓ̃ᵐⱼₖ − Γ̃ˡⱼₘΓ̃ᵐᵢₖ`.
pub fn riemann_at(conn: &dyn Connection, p: &Point) -> Result<Riemann> {
    let n = conn.dim();
    let gj = conn.coefficient_jets_at(p)?;
    let gv = gj.map_re();
    let mut data = vec![0.0; n * n * n * n];
    for l in 0..n {
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut s = gj[(l, j, k)].grad()[i] - gj[(l, i, k)].grad()[j];
                    for m in 0..n {
                        s += gv[(l, i, m)] * gv[(m, j, k)] - gv[(l, j, m)] * gv[(m, i, k)];
                    }
                    data[((l * n + k) * n + i) * n + j] = s;
                }
            }
        }
    }
    Ok(Riemann { n, data })
}

pub fn curvature_at(
    conn: &dyn Connection,
    x: &VectorField,
    y: &VectorField,
    z: &VectorField,
    p: &Point,
) -> Result<Vec<f64>> {
    let r = riemann_at(conn, p)?;
    Ok(r.apply(&x.value_at(p)?, &y.value_at(p)?, &z.value_at(p)?))
}

/// Levi-Civita derivative `∇̊_X Y` solved from the Koszul formula with
/// `Z = ∂ₖ`; uses no Christoffel symbols.
pub fn koszul_at(m: &ChartMetric, x: &VectorField, y: &VectorField, p: &Point) -> Result<Vec<f64>> {
    let n = m.dim();
    check_field("direction", x, n)?;
    check_field("argument", y, n)?;
    let (g, ginv) = metric_at(m, p)?;
    let (xj, yj) = (x.jet_at(p)?, y.jet_at(p)?);
    let xy = bracket(&xj, &yj);
    let dxy = inner_jet(m, x, y, p)?;
    let mut rhs = vec![0.0; n];
    for (k, r) in rhs.iter_mut().enumerate() {
        let zf = VectorField::coordinate_shared(k, m.shared_names());
        let zj = FieldJet::constant(zf.value_at(p)?);
        let x_gyz = dot(inner_jet(m, y, &zf, p)?.grad(), &xj.value);
        let y_gxz = dot(inner_jet(m, x, &zf, p)?.grad(), &yj.value);
        let z_gxy = dxy.grad()[k];
        let yz = bracket(&yj, &zj);
        let xz = bracket(&xj, &zj);
        let twice = x_gyz + y_gxz - z_gxy - inner(&g, &xj.value, &yz) - inner(&g, &yj.value, &xz)
            + inner(&g, &zj.value, &xy);
        *r = 0.5 * twice;
    }
    Ok(ginv.mul_vec(&rhs))
}
