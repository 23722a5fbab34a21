//! Everything the checks need at one sample point, computed once.

use crate::error::{Error, Result};
use crate::expr::{Jet, Point, ScalarExpr};
use crate::geometry::{christoffel_at, covariant, gradient_at, torsion, Connection, FieldJet, VectorField};
use crate::linalg::{combine, dot, inner, max_norm, sub, Coefficients, Mat, Matrix};
use crate::tripathi::{assemble_values, DataAt, TripathiConnection};
use crate::warped::{Side, WarpedProduct};

/// Test fields: lifted base fields, lifted fiber fields, and fields over the
/// whole chart (used only by the chart-wide identities).
#[derive(Debug, Clone)]
pub struct Battery {
    pub base: Vec<VectorField>,
    pub fiber: Vec<VectorField>,
    pub mixed: Vec<VectorField>,
    pub base_lifts: Vec<VectorField>,
    pub fiber_lifts: Vec<VectorField>,
    /// Base functions for the gradient-lift identity.
    pub base_scalars: Vec<ScalarExpr>,
}

impl Battery {
    pub fn new(
        wp: &WarpedProduct,
        base: Vec<VectorField>,
        fiber: Vec<VectorField>,
        mixed: Vec<VectorField>,
        base_scalars: Vec<ScalarExpr>,
    ) -> Result<Battery> {
        let base_lifts = base.iter().map(|f| wp.lift(Side::Base, f)).collect::<Result<_>>()?;
        let fiber_lifts = fiber.iter().map(|f| wp.lift(Side::Fiber, f)).collect::<Result<_>>()?;
        for f in &mixed {
            if f.vars() != wp.names() {
                return Err(Error::ChartMismatch("battery field is not over the assembled chart".into()));
            }
        }
        Ok(Battery { base, fiber, mixed, base_lifts, fiber_lifts, base_scalars })
    }
}

/// A lifted field at a point: its jet on the assembled chart and the jet of
/// the factor field it came from.
#[derive(Debug, Clone)]
pub struct Lifted {
    pub total: FieldJet,
    pub factor: FieldJet,
}

fn restrict(j: &FieldJet, off: usize, len: usize) -> FieldJet {
    let n = j.dim();
    let value = j.value[off..off + len].to_vec();
    let mut jacobian = Vec::with_capacity(len * len);
    for k in 0..len {
        for i in 0..len {
            jacobian.push(j.jacobian[(off + k) * n + off + i]);
        }
    }
    FieldJet { value, jacobian }
}

pub struct Frame<'a> {
    pub wp: &'a WarpedProduct,
    pub point: Point,
    pub g: Matrix,
    pub ginv: Matrix,
    pub coeffs: Coefficients<f64>,
    pub lc: Coefficients<f64>,
    pub data: DataAt,
    /// `F` at the point and `grad F` on the assembled chart.
    pub warp: f64,
    pub warp_partials: Vec<f64>,
    pub grad_warp: Vec<f64>,
    pub xs: Vec<Lifted>,
    pub vs: Vec<Lifted>,
    /// Every test field as a chart jet: base lifts, fiber lifts, mixed.
    pub all: Vec<FieldJet>,
    all_comps: Vec<Vec<Jet>>,
    g_jet: Mat<Jet>,
    pub base_coeffs: Coefficients<f64>,
    pub base_lc: Coefficients<f64>,
    pub fiber_coeffs: Coefficients<f64>,
    pub fiber_lc: Coefficients<f64>,
    lemma_residual: f64,
}

impl<'a> Frame<'a> {
    pub fn new(wp: &'a WarpedProduct, conn: &TripathiConnection, battery: &Battery, point: Point) -> Result<Frame<'a>> {
        let (m, q) = (wp.base_dim(), wp.fiber_dim());
        let chart = wp.assembled();
        let g = chart.values_at(&point)?;
        let ginv = g.inverse().ok_or_else(|| Error::Singular { point: point.coords().to_vec() })?;
        let coeffs = conn.coefficients_at(&point)?;
        let lc = christoffel_at(chart, &point)?;
        let data = conn.data_at(&point)?;
        let fj = wp.warp_lifted().eval_jet(&point, 1)?;
        let warp = fj.value();
        let warp_partials = fj.grad().to_vec();
        let grad_warp = ginv.mul_vec(&warp_partials);

        let lift = |f: &VectorField, off: usize, len: usize| -> Result<Lifted> {
            let total = f.jet_at(&point)?;
            let factor = restrict(&total, off, len);
            Ok(Lifted { total, factor })
        };
        let xs: Vec<Lifted> = battery.base_lifts.iter().map(|f| lift(f, 0, m)).collect::<Result<_>>()?;
        let vs: Vec<Lifted> = battery.fiber_lifts.iter().map(|f| lift(f, m, q)).collect::<Result<_>>()?;
        let mut all: Vec<FieldJet> = xs.iter().chain(&vs).map(|l| l.total.clone()).collect();
        for f in &battery.mixed {
            all.push(f.jet_at(&point)?);
        }
        let fields: Vec<&VectorField> =
            battery.base_lifts.iter().chain(&battery.fiber_lifts).chain(&battery.mixed).collect();
        let all_comps = fields
            .iter()
            .map(|f| f.components().iter().map(|c| c.eval_jet(&point, 1)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let n = wp.dim();
        let mut gj = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                gj.push(chart.component(i, j).eval_jet(&point, 1)?);
            }
        }
        let g_jet = Mat::from_fn(n, |i, j| gj[i * n + j].clone());

        let (bp, fp) = (wp.base_point(&point), wp.fiber_point(&point));
        let base_g = wp.base().values_at(&bp)?;
        let base_lc = christoffel_at(wp.base(), &bp)?;
        let d = &data;
        let block = |off: usize, len: usize| -> (Vec<f64>, Vec<f64>, Vec<f64>, Matrix) {
            (
                d.p[off..off + len].to_vec(),
                d.p1[off..off + len].to_vec(),
                d.p2[off..off + len].to_vec(),
                Mat::from_fn(len, |k, i| d.phi[(off + k, off + i)]),
            )
        };
        let singular = || Error::Singular { point: point.coords().to_vec() };
        let (p, p1, p2, phi) = block(0, m);
        let base_data = DataAt::from_values(&base_g, d.f1, d.f2, p, p1, p2, phi).ok_or_else(singular)?;
        let base_coeffs = assemble_values(&base_g, &base_lc, &base_data).ok_or_else(singular)?;

        let slice = wp.fiber_slice(&bp)?;
        let fiber_g = slice.values_at(&fp)?;
        let fiber_lc = christoffel_at(&slice, &fp)?;
        let (p, p1, p2, phi) = block(m, q);
        let fiber_data = DataAt::from_values(&fiber_g, d.f1, d.f2, p, p1, p2, phi).ok_or_else(singular)?;
        let fiber_coeffs = assemble_values(&fiber_g, &fiber_lc, &fiber_data).ok_or_else(singular)?;

        let mut lemma_residual: f64 = 0.0;
        for h in &battery.base_scalars {
            lemma_residual = lemma_residual.max(wp.grad_lift_check(h, &point)?);
        }
        // the warping function itself, through the chart-level gradient
        let base_grad = gradient_at(wp.base(), wp.warp(), &bp)?;
        lemma_residual = lemma_residual.max(max_norm(&sub(&grad_warp, &wp.embed(Side::Base, &base_grad))));

        Ok(Frame {
            wp,
            point,
            g,
            ginv,
            coeffs,
            lc,
            data,
            warp,
            warp_partials,
            grad_warp,
            xs,
            vs,
            all,
            all_comps,
            g_jet,
            base_coeffs,
            base_lc,
            fiber_coeffs,
            fiber_lc,
            lemma_residual,
        })
    }

    pub fn nab(&self, x: &FieldJet, y: &FieldJet) -> Vec<f64> {
        covariant(&self.coeffs, &x.value, y)
    }

    pub fn lcnab(&self, x: &FieldJet, y: &FieldJet) -> Vec<f64> {
        covariant(&self.lc, &x.value, y)
    }

    /// Lift of the base Tripathi derivative `¹∇_X Y`.
    pub fn base_lift(&self, x: &Lifted, y: &Lifted) -> Vec<f64> {
        self.wp.embed(Side::Base, &covariant(&self.base_coeffs, &x.factor.value, &y.factor))
    }

    pub fn base_lc_lift(&self, x: &Lifted, y: &Lifted) -> Vec<f64> {
        self.wp.embed(Side::Base, &covariant(&self.base_lc, &x.factor.value, &y.factor))
    }

    /// Lift of the fiber Tripathi derivative `²∇_V W`.
    pub fn fiber_lift(&self, v: &Lifted, w: &Lifted) -> Vec<f64> {
        self.wp.embed(Side::Fiber, &covariant(&self.fiber_coeffs, &v.factor.value, &w.factor))
    }

    pub fn fiber_lc_lift(&self, v: &Lifted, w: &Lifted) -> Vec<f64> {
        self.wp.embed(Side::Fiber, &covariant(&self.fiber_lc, &v.factor.value, &w.factor))
    }

    pub fn nor(&self, v: &[f64]) -> Vec<f64> {
        self.wp.split(v).0
    }

    pub fn tan(&self, v: &[f64]) -> Vec<f64> {
        self.wp.split(v).1
    }

    pub fn gm(&self, a: &[f64], b: &[f64]) -> f64 {
        inner(&self.g, a, b)
    }

    pub fn u(&self, a: &[f64]) -> f64 {
        dot(&self.data.u, a)
    }

    pub fn u1(&self, a: &[f64]) -> f64 {
        dot(&self.data.u1, a)
    }

    pub fn phi(&self, a: &[f64]) -> Vec<f64> {
        self.data.phi.mul_vec(a)
    }

    pub fn phi1(&self, a: &[f64]) -> Vec<f64> {
        self.data.phi1.mul_vec(a)
    }

    pub fn phi2(&self, a: &[f64]) -> Vec<f64> {
        self.data.phi2.mul_vec(a)
    }

    /// `X·F / F` for a chart vector `X`.
    pub fn xf(&self, x: &[f64]) -> f64 {
        dot(&self.warp_partials, x) / self.warp
    }

    /// `−(g(V,W)/F) grad F`.
    pub fn normal_term(&self, v: &[f64], w: &[f64]) -> Vec<f64> {
        combine(&[(-self.gm(v, w) / self.warp, &self.grad_warp)])
    }

    pub fn torsion(&self, x: &FieldJet, y: &FieldJet) -> Vec<f64> {
        torsion(&self.coeffs, x, y)
    }

    /// `(∇_X g)(Y,Z)` over fields in `all`; `X·g(Y,Z)` comes from the jet of
    /// the assembled scalar.
    pub fn nonmetricity(&self, x: usize, y: usize, z: usize) -> f64 {
        let n = self.wp.dim();
        let (ys, zs) = (&self.all_comps[y], &self.all_comps[z]);
        let mut s = Jet::constant(0.0, n, 1);
        for i in 0..n {
            for j in 0..n {
                s = &s + &(&(&self.g_jet[(i, j)] * &ys[i]) * &zs[j]);
            }
        }
        let (xj, yj, zj) = (&self.all[x], &self.all[y], &self.all[z]);
        dot(s.grad(), &xj.value) - self.gm(&self.nab(xj, yj), &zj.value) - self.gm(&yj.value, &self.nab(xj, zj))
    }

    pub fn lemma_residual(&self) -> f64 {
        self.lemma_residual
    }

    /// `max ‖f(X, Y)‖∞` over base × base.
    pub fn over_xy(&self, f: impl Fn(&Lifted, &Lifted) -> Vec<f64>) -> f64 {
        worst(self.xs.iter().flat_map(|a| self.xs.iter().map(move |b| (a, b))).map(|(a, b)| f(a, b)))
    }

    /// `max ‖f(X, V)‖∞` over base × fiber.
    pub fn over_xv(&self, f: impl Fn(&Lifted, &Lifted) -> Vec<f64>) -> f64 {
        worst(self.xs.iter().flat_map(|a| self.vs.iter().map(move |b| (a, b))).map(|(a, b)| f(a, b)))
    }

    /// `max ‖f(V, W)‖∞` over fiber × fiber.
    pub fn over_vw(&self, f: impl Fn(&Lifted, &Lifted) -> Vec<f64>) -> f64 {
        worst(self.vs.iter().flat_map(|a| self.vs.iter().map(move |b| (a, b))).map(|(a, b)| f(a, b)))
    }
}

/// Largest max-norm; NaN wins so that it cannot hide.
pub(crate) fn worst(it: impl Iterator<Item = Vec<f64>>) -> f64 {
    let mut m: f64 = 0.0;
    for v in it {
        let r = max_norm_nan(&v);
        if r.is_nan() || r > m {
            m = r;
            if m.is_nan() {
                return m;
            }
        }
    }
    m
}

fn max_norm_nan(v: &[f64]) -> f64 {
    if v.iter().any(|x| x.is_nan()) {
        f64::NAN
    } else {
        max_norm(v)
    }
}

pub(crate) fn worst_scalar(it: impl Iterator<Item = f64>) -> f64 {
    worst(it.map(|x| vec![x]))
}
