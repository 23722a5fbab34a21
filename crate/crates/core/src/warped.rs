//! Warped products `M₁ ×_F M₂` materialized as one chart.
//!
//! Coordinates `0..m` belong to the base and `m..m+p` to the fiber. The
//! assembled metric is `diag(g₁, F²g₂)` with mixed entries that are literal
//! zeros, so the projections below are exact component masks.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{validate_vars, Point, ScalarExpr};
use crate::geometry::{cov_deriv_at, gradient_at, ChartMetric, LeviCivita, VectorField};
use crate::linalg::{dot, max_norm, scale, sub};

/// Which factor a field or coordinate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Base,
    Fiber,
}

impl Side {
    fn label(self) -> &'static str {
        match self {
            Side::Base => "base",
            Side::Fiber => "fiber",
        }
    }
}

/// Open sampling intervals, one per coordinate of the assembled chart.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBox {
    intervals: Vec<(f64, f64)>,
    base_dim: usize,
}

impl SampleBox {
    pub fn new(base: Vec<(f64, f64)>, fiber: Vec<(f64, f64)>) -> Result<SampleBox> {
        let base_dim = base.len();
        let intervals: Vec<(f64, f64)> = base.into_iter().chain(fiber).collect();
        for (i, (lo, hi)) in intervals.iter().enumerate() {
            if !lo.is_finite() || !hi.is_finite() || lo >= hi {
                return Err(Error::InvalidBox(format!("interval {i} is ({lo}, {hi})")));
            }
        }
        Ok(SampleBox { intervals, base_dim })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn base(&self) -> &[(f64, f64)] {
        &self.intervals[..self.base_dim]
    }

    pub fn fiber(&self) -> &[(f64, f64)] {
        &self.intervals[self.base_dim..]
    }

    /// The box pulled in towards its centre by `frac` of each half-width.
    pub fn shrunk(&self, frac: f64) -> SampleBox {
        let intervals = self
            .intervals
            .iter()
            .map(|(lo, hi)| {
                let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo) * (1.0 - frac));
                (c - h, c + h)
            })
            .collect();
        SampleBox { intervals, base_dim: self.base_dim }
    }
}

#[derive(Debug, Clone)]
pub struct WarpedProduct {
    base: ChartMetric,
    fiber: ChartMetric,
    warp: ScalarExpr,
    warp_total: ScalarExpr,
    assembled: ChartMetric,
}

/// Grid resolution per base axis for the positivity check.
fn grid_per_axis(m: usize) -> usize {
    match m {
        1 => 64,
        2 => 16,
        3 => 8,
        _ => 4,
    }
}

impl WarpedProduct {
    /// `warp` must be an expression over exactly the base coordinates.
    pub fn new(base: &ChartMetric, fiber: &ChartMetric, warp: ScalarExpr) -> Result<WarpedProduct> {
        if warp.vars() != base.names() {
            return Err(Error::WarpOffBase(format!("{:?} (expected {:?})", warp.vars(), base.names())));
        }
        let all: Vec<&str> = base.names().iter().chain(fiber.names()).map(|s| s.as_str()).collect();
        if let Some(dup) = base.names().iter().find(|n| fiber.names().contains(n)) {
            return Err(Error::NameCollision(dup.clone()));
        }
        let names = validate_vars(&all)?;
        let (m, n) = (base.dim(), all.len());
        let warp_total = warp.rebind_shared(&names)?;
        let f2 = warp_total.powi(2);
        let zero = ScalarExpr::constant_shared(0.0, &names);
        let mut rows = vec![vec![zero; n]; n];
        for i in 0..m {
            for j in 0..m {
                rows[i][j] = base.component(i, j).rebind_shared(&names)?;
            }
        }
        for i in 0..fiber.dim() {
            for j in 0..fiber.dim() {
                let c = fiber.component(i, j);
                rows[m + i][m + j] = match c.as_literal() {
                    Some(v) if v == 1.0 => f2.clone(),
                    Some(v) if v == 0.0 => ScalarExpr::constant_shared(0.0, &names),
                    _ => &f2 * &c.rebind_shared(&names)?,
                };
            }
        }
        let assembled = ChartMetric::from_exprs(&names, rows)?;
        Ok(WarpedProduct { base: base.clone(), fiber: fiber.clone(), warp, warp_total, assembled })
    }

    /// Parses `warp` against the assembled coordinates so that a fiber
    /// coordinate is reported as such rather than as unknown.
    pub fn parse(base: &ChartMetric, fiber: &ChartMetric, warp: &str) -> Result<WarpedProduct> {
        let all: Vec<&str> = base.names().iter().chain(fiber.names()).map(|s| s.as_str()).collect();
        if let Some(dup) = base.names().iter().find(|n| fiber.names().contains(n)) {
            return Err(Error::NameCollision(dup.clone()));
        }
        let e = ScalarExpr::parse(warp, &all)?;
        if let Some(bad) = e.referenced().into_iter().find(|v| fiber.names().iter().any(|f| f == v)) {
            return Err(Error::WarpOffBase(bad.to_string()));
        }
        WarpedProduct::new(base, fiber, e.rebind(base.names())?)
    }

    pub fn base(&self) -> &ChartMetric {
        &self.base
    }

    pub fn fiber(&self) -> &ChartMetric {
        &self.fiber
    }

    pub fn assembled(&self) -> &ChartMetric {
        &self.assembled
    }

    /// `F` over the base coordinates.
    pub fn warp(&self) -> &ScalarExpr {
        &self.warp
    }

    /// `F ∘ π` over the assembled coordinates.
    pub fn warp_lifted(&self) -> &ScalarExpr {
        &self.warp_total
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber.dim()
    }

    pub fn dim(&self) -> usize {
        self.assembled.dim()
    }

    pub fn names(&self) -> &[String] {
        self.assembled.names()
    }

    pub(crate) fn shared_names(&self) -> &Arc<[String]> {
        self.assembled.shared_names()
    }

    pub fn side_of(&self, index: usize) -> Side {
        if index < self.base_dim() {
            Side::Base
        } else {
            Side::Fiber
        }
    }

    fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim() {
            return Err(Error::Dimension { what: "point".into(), expected: self.dim(), got: p.dim() });
        }
        Ok(())
    }

    pub fn base_point(&self, p: &Point) -> Point {
        Point::of(&p.coords()[..self.base_dim()])
    }

    pub fn fiber_point(&self, p: &Point) -> Point {
        Point::of(&p.coords()[self.base_dim()..])
    }

    /// Checks `F > 0` on an interior grid of the base box.
    pub fn check_warp_on(&self, sample_box: &SampleBox) -> Result<()> {
        let b = sample_box.base();
        if b.len() != self.base_dim() || sample_box.fiber().len() != self.fiber_dim() {
            return Err(Error::InvalidBox(format!(
                "box has {}+{} intervals, chart has {}+{} coordinates",
                b.len(),
                sample_box.fiber().len(),
                self.base_dim(),
                self.fiber_dim()
            )));
        }
        let n = grid_per_axis(b.len());
        let total = n.pow(b.len() as u32);
        for idx in 0..total {
            let mut rest = idx;
            let coords: Vec<f64> = b
                .iter()
                .map(|(lo, hi)| {
                    let k = rest % n;
                    rest /= n;
                    lo + (hi - lo) * (k as f64 + 0.5) / n as f64
                })
                .collect();
            let x = Point::of(&coords);
            let v = self.warp.eval(&x)?;
            if v <= 0.0 {
                return Err(Error::WarpNotPositive { point: coords, value: v });
            }
        }
        Ok(())
    }

    /// Lifts a factor field: zero components on the other factor.
    pub fn lift(&self, side: Side, field: &VectorField) -> Result<VectorField> {
        let (own, off) = match side {
            Side::Base => (&self.base, 0),
            Side::Fiber => (&self.fiber, self.base_dim()),
        };
        if field.vars() != own.names() {
            let name = field
                .vars()
                .iter()
                .find(|v| !own.names().contains(v))
                .cloned()
                .unwrap_or_else(|| format!("{:?}", field.vars()));
            return Err(Error::WrongFactor { side: side.label(), name });
        }
        let names = self.shared_names();
        let mut comps = vec![ScalarExpr::constant_shared(0.0, names); self.dim()];
        for (i, c) in field.components().iter().enumerate() {
            comps[off + i] = c.rebind_shared(names)?;
        }
        VectorField::from_exprs(comps)
    }

    /// `h ∘ π` for `h` over the base coordinates.
    pub fn lift_scalar(&self, h: &ScalarExpr) -> Result<ScalarExpr> {
        if h.vars() != self.base.names() {
            let name = h.vars().iter().find(|v| !self.base.names().contains(v)).cloned().unwrap_or_default();
            return Err(Error::WrongFactor { side: "base", name });
        }
        Ok(h.rebind_shared(self.shared_names())?)
    }

    /// Embeds factor components into an assembled vector.
    pub fn embed(&self, side: Side, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        let off = if side == Side::Base { 0 } else { self.base_dim() };
        out[off..off + v.len()].copy_from_slice(v);
        out
    }

    /// `(nor, tan)`: the base and fiber parts.
    pub fn split_at(&self, v: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        if v.len() != self.dim() {
            return Err(Error::Dimension { what: "vector".into(), expected: self.dim(), got: v.len() });
        }
        Ok(self.split(v))
    }

    pub(crate) fn split(&self, v: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let m = self.base_dim();
        let nor = v.iter().enumerate().map(|(i, x)| if i < m { *x } else { 0.0 }).collect();
        let tan = v.iter().enumerate().map(|(i, x)| if i < m { 0.0 } else { *x }).collect();
        (nor, tan)
    }

    /// The fiber through base point `x` with its induced metric `F(x)²g₂`.
    pub fn fiber_slice(&self, x: &Point) -> Result<ChartMetric> {
        let f = self.warp.eval(x)?;
        let names = self.fiber.shared_names();
        let s = ScalarExpr::constant_shared(f * f, names);
        let q = self.fiber.dim();
        let rows = (0..q).map(|i| (0..q).map(|j| &s * self.fiber.component(i, j)).collect()).collect();
        ChartMetric::from_exprs(names, rows)
    }

    /// `‖grad(h∘π) − lift(grad h)‖∞` at `p`.
    pub fn grad_lift_check(&self, h: &ScalarExpr, p: &Point) -> Result<f64> {
        self.check_point(p)?;
        let total = gradient_at(&self.assembled, &self.lift_scalar(h)?, p)?;
        let base = gradient_at(&self.base, h, &self.base_point(p))?;
        Ok(max_norm(&sub(&total, &self.embed(Side::Base, &base))))
    }

    /// `X·F / F` at `p` for a base field `X`.
    pub fn log_derivative(&self, x: &VectorField, p: &Point) -> Result<f64> {
        let xp = self.base_point(p);
        let j = self.warp.eval_jet(&xp, 1)?;
        Ok(dot(j.grad(), &x.value_at(&xp)?) / j.value())
    }

    /// The four Levi-Civita decomposition residuals for base fields `X, Y`
    /// and fiber fields `V, W`:
    /// `∇̊_X Y` vs the base lift, `∇̊_X V` and `∇̊_V X` vs `(XF/F)V`,
    /// `nor ∇̊_V W` vs `−(g(V,W)/F) grad F`, `tan ∇̊_V W` vs the fiber lift.
    pub fn oneill_residuals_at(
        &self,
        x: &VectorField,
        y: &VectorField,
        v: &VectorField,
        w: &VectorField,
        p: &Point,
    ) -> Result<[f64; 4]> {
        self.check_point(p)?;
        let (bp, fp) = (self.base_point(p), self.fiber_point(p));
        let lc = LeviCivita::new(&self.assembled);
        let (lx, ly, lv, lw) =
            (self.lift(Side::Base, x)?, self.lift(Side::Base, y)?, self.lift(Side::Fiber, v)?, self.lift(Side::Fiber, w)?);

        let base_xy = cov_deriv_at(&LeviCivita::new(&self.base), x, y, &bp)?;
        let r1 = max_norm(&sub(&cov_deriv_at(&lc, &lx, &ly, p)?, &self.embed(Side::Base, &base_xy)));

        let xf = self.log_derivative(x, p)?;
        let expected = scale(xf, &lv.value_at(p)?);
        let r2 = max_norm(&sub(&cov_deriv_at(&lc, &lx, &lv, p)?, &expected))
            .max(max_norm(&sub(&cov_deriv_at(&lc, &lv, &lx, p)?, &expected)));

        let vw = cov_deriv_at(&lc, &lv, &lw, p)?;
        let (nor, tan) = self.split(&vw);
        let g = self.assembled.values_at(p)?;
        let gvw = crate::linalg::inner(&g, &lv.value_at(p)?, &lw.value_at(p)?);
        let f = self.warp.eval(&bp)?;
        let grad_f = gradient_at(&self.assembled, &self.warp_total, p)?;
        let r3 = max_norm(&crate::linalg::add(&nor, &scale(gvw / f, &grad_f)));

        let slice = self.fiber_slice(&bp)?;
        let fiber_vw = cov_deriv_at(&LeviCivita::new(&slice), v, w, &fp)?;
        let r4 = max_norm(&sub(&tan, &self.embed(Side::Fiber, &fiber_vw)));
        Ok([r1, r2, r3, r4])
    }
}

/// Builds a warped product from parts and checks `F > 0` over the base box.
pub fn build_warped(
    base: &ChartMetric,
    fiber: &ChartMetric,
    warp: &str,
    sample_box: &SampleBox,
) -> Result<WarpedProduct> {
    let wp = WarpedProduct::parse(base, fiber, warp)?;
    wp.check_warp_on(sample_box)?;
    Ok(wp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn line(name: &str) -> ChartMetric {
        ChartMetric::diagonal(&[name], &["1"]).unwrap()
    }

    fn polar() -> WarpedProduct {
        WarpedProduct::parse(&line("r"), &line("θ"), "r").unwrap()
    }

    #[test]
    fn polar_assembles() {
        let wp = polar();
        let g = wp.assembled().values_at(&Point::of(&[2.0, 0.1])).unwrap();
        assert_eq!(g, Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 4.0]]));
        assert_eq!(wp.assembled().component(0, 1).as_literal(), Some(0.0));
    }

    #[test]
    fn constant_warp_is_direct_product() {
        let wp = WarpedProduct::parse(&line("r"), &line("θ"), "1").unwrap();
        let g = wp.assembled().values_at(&Point::of(&[0.3, 5.0])).unwrap();
        assert_eq!(g, Matrix::identity(2));
    }

    #[test]
    fn warp_positivity_and_placement() {
        let bx = SampleBox::new(vec![(0.0, 1.0)], vec![(0.0, 6.28)]).unwrap();
        let err = build_warped(&line("r"), &line("θ"), "r - 5", &bx).unwrap_err();
        assert!(matches!(err, Error::WarpNotPositive { .. }));
        let err = WarpedProduct::parse(&line("r"), &line("θ"), "r*θ").unwrap_err();
        assert!(matches!(err, Error::WarpOffBase(ref n) if n == "θ"));
        let err = WarpedProduct::parse(&line("r"), &line("r"), "1").unwrap_err();
        assert!(matches!(err, Error::NameCollision(_)));
        assert!(SampleBox::new(vec![(1.0, 1.0)], vec![(0.0, 1.0)]).is_err());
    }

    #[test]
    fn lifts_and_splits() {
        let wp = polar();
        let p = Point::of(&[2.0, 0.5]);
        let x = VectorField::parse(&["1"], &["r"]).unwrap();
        let v = VectorField::parse(&["sin(θ)"], &["θ"]).unwrap();
        assert_eq!(wp.lift(Side::Base, &x).unwrap().value_at(&p).unwrap(), vec![1.0, 0.0]);
        assert_eq!(wp.lift(Side::Fiber, &v).unwrap().value_at(&p).unwrap(), vec![0.0, 0.5f64.sin()]);
        assert!(matches!(wp.lift(Side::Base, &v), Err(Error::WrongFactor { .. })));
        assert_eq!(wp.split_at(&[1.0, 2.0]).unwrap(), (vec![1.0, 0.0], vec![0.0, 2.0]));
        assert_eq!(wp.split_at(&[0.0, 3.0]).unwrap().0, vec![0.0, 0.0]);
    }

    #[test]
    fn gradient_lift() {
        let wp = polar();
        let h = ScalarExpr::parse("r", &["r"]).unwrap();
        assert!(wp.grad_lift_check(&h, &Point::of(&[1.5, 2.0])).unwrap() < 1e-12);
        let c = ScalarExpr::parse("3", &["r"]).unwrap();
        assert_eq!(wp.grad_lift_check(&c, &Point::of(&[1.5, 2.0])).unwrap(), 0.0);
        let hyp = WarpedProduct::parse(&line("r"), &line("θ"), "exp(r)").unwrap();
        let s = ScalarExpr::parse("sin(r)", &["r"]).unwrap();
        assert!(hyp.grad_lift_check(&s, &Point::of(&[0.4, 1.0])).unwrap() < 1e-10);
    }

    #[test]
    fn oneill_on_polar_and_sphere() {
        let x = VectorField::parse(&["1"], &["r"]).unwrap();
        let v = VectorField::parse(&["1"], &["θ"]).unwrap();
        let res = polar().oneill_residuals_at(&x, &x, &v, &v, &Point::of(&[2.0, 0.0])).unwrap();
        assert!(res.iter().all(|r| *r < 1e-10), "{res:?}");

        let sphere = WarpedProduct::parse(&line("r"), &line("θ"), "sin(r)").unwrap();
        let p = Point::of(&[std::f64::consts::FRAC_PI_4, 0.3]);
        let lc = LeviCivita::new(sphere.assembled());
        let lv = sphere.lift(Side::Fiber, &v).unwrap();
        let (nor, _) = sphere.split(&cov_deriv_at(&lc, &lv, &lv, &p).unwrap());
        assert!((nor[0] + 0.5).abs() < 1e-12 && nor[1] == 0.0);
        let res = sphere.oneill_residuals_at(&x, &x, &v, &v, &p).unwrap();
        assert!(res[2] < 1e-10);
    }

    #[test]
    fn fiber_homothety() {
        let fiber = ChartMetric::diagonal(&["a", "b"], &["1", "sin(a)^2"]).unwrap();
        let wp = WarpedProduct::parse(&line("s"), &fiber, "exp(s/2)").unwrap();
        let p = Point::of(&[0.7, 1.1, 0.2]);
        let g = wp.assembled().values_at(&p).unwrap();
        let g2 = fiber.values_at(&wp.fiber_point(&p)).unwrap();
        let f2 = 0.7f64.exp();
        for i in 0..2 {
            for j in 0..2 {
                assert!((g[(1 + i, 1 + j)] - f2 * g2[(i, j)]).abs() < 1e-12);
            }
        }
    }
}
