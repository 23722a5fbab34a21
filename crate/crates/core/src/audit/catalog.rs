//! The checked identities. Each entry compares a ground-truth side computed
//! from the assembled connection coefficients with a claimed right-hand side.
//!
//! `X, Y` range over lifted base fields and `V, W` over lifted fiber fields;
//! the residual is the largest max-norm over the battery.

use super::frame::{worst, worst_scalar, Frame, Lifted};
use super::{Placement, Scope, Variant};
use crate::linalg::{combine, dot, sub};
use crate::tripathi::PresetId;

pub struct Check {
    /// Identifier without the variant suffix.
    pub id: &'static str,
    pub variant: Variant,
    /// Whether an `as-derived` twin exists.
    pub paired: bool,
    pub scope: Scope,
    /// The identity as a formula.
    pub statement: &'static str,
    /// Reading notes, e.g. symbol substitutions.
    pub note: &'static str,
    pub(crate) eval: fn(&Frame) -> f64,
}

impl Check {
    /// `id` for single checks, `id.variant` for paired ones.
    pub fn name(&self) -> String {
        if self.paired {
            format!("{}.{}", self.id, self.variant)
        } else {
            self.id.to_string()
        }
    }

    pub fn residual(&self, f: &Frame) -> f64 {
        (self.eval)(f)
    }
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("id", &self.name()).field("scope", &self.scope).finish()
    }
}

fn cat(mut a: Vec<f64>, b: Vec<f64>) -> Vec<f64> {
    a.extend(b);
    a
}

fn val(l: &Lifted) -> &[f64] {
    &l.total.value
}

// chart-wide identities

fn torsion(f: &Frame) -> f64 {
    let all = &f.all;
    worst(all.iter().flat_map(|a| all.iter().map(move |b| (a, b))).map(|(a, b)| {
        sub(&f.torsion(a, b), &f.data.torsion_claimed(&a.value, &b.value))
    }))
}

fn nonmetricity(f: &Frame) -> f64 {
    let n = f.all.len();
    let triples = (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))));
    worst_scalar(triples.map(|(i, j, k)| {
        let (x, y, z) = (&f.all[i].value, &f.all[j].value, &f.all[k].value);
        f.nonmetricity(i, j, k) - f.data.nonmetricity_claimed(&f.g, x, y, z)
    }))
}

fn gradient_lift(f: &Frame) -> f64 {
    f.lemma_residual()
}

fn lc_base_lift(f: &Frame) -> f64 {
    f.over_xy(|x, y| sub(&f.lcnab(&x.total, &y.total), &f.base_lc_lift(x, y)))
}

fn lc_mixed(f: &Frame) -> f64 {
    f.over_xv(|x, v| {
        let e = combine(&[(f.xf(val(x)), val(v))]);
        cat(sub(&f.lcnab(&x.total, &v.total), &e), sub(&f.lcnab(&v.total, &x.total), &e))
    })
}

fn lc_normal(f: &Frame) -> f64 {
    f.over_vw(|v, w| sub(&f.nor(&f.lcnab(&v.total, &w.total)), &f.normal_term(val(v), val(w))))
}

fn lc_fiber_lift(f: &Frame) -> f64 {
    f.over_vw(|v, w| sub(&f.tan(&f.lcnab(&v.total, &w.total)), &f.fiber_lc_lift(v, w)))
}

// shared items

/// `∇_X Y = lift ¹∇_X Y`.
fn base_lift(f: &Frame) -> f64 {
    f.over_xy(|x, y| sub(&f.nab(&x.total, &y.total), &f.base_lift(x, y)))
}

/// `nor ∇_X Y = lift ¹∇_X Y`.
fn base_lift_nor(f: &Frame) -> f64 {
    f.over_xy(|x, y| sub(&f.nor(&f.nab(&x.total, &y.total)), &f.base_lift(x, y)))
}

/// `tan ∇_V W = lift ²∇_V W`.
fn fiber_lift_tan(f: &Frame) -> f64 {
    f.over_vw(|v, w| sub(&f.tan(&f.nab(&v.total, &w.total)), &f.fiber_lift(v, w)))
}

/// `nor ∇_V W = −(g(V,W)/F) grad F`.
fn normal_only(f: &Frame) -> f64 {
    f.over_vw(|v, w| sub(&f.nor(&f.nab(&v.total, &w.total)), &f.normal_term(val(v), val(w))))
}

/// `nor ∇_V W = −(g(V,W)/F) grad F + extra(V, W)`.
fn normal_plus(f: &Frame, extra: impl Fn(&[f64], &[f64]) -> Vec<f64>) -> f64 {
    f.over_vw(|v, w| {
        let (vv, wv) = (val(v), val(w));
        let rhs = crate::linalg::add(&f.normal_term(vv, wv), &extra(vv, wv));
        sub(&f.nor(&f.nab(&v.total, &w.total)), &rhs)
    })
}

/// `∇_X V = a(X,V)` and `∇_V X = b(X,V)`.
fn mixed_pair(f: &Frame, a: impl Fn(&[f64], &[f64]) -> Vec<f64>, b: impl Fn(&[f64], &[f64]) -> Vec<f64>) -> f64 {
    f.over_xv(|x, v| {
        let (xv, vv) = (val(x), val(v));
        cat(sub(&f.nab(&x.total, &v.total), &a(xv, vv)), sub(&f.nab(&v.total, &x.total), &b(xv, vv)))
    })
}

/// `tan ∇_X V = t(X,V)` and `nor ∇_X V = n(X,V)`.
fn split_xv(f: &Frame, t: impl Fn(&[f64], &[f64]) -> Vec<f64>, n: impl Fn(&[f64], &[f64]) -> Vec<f64>) -> f64 {
    f.over_xv(|x, v| {
        let (xv, vv) = (val(x), val(v));
        let d = f.nab(&x.total, &v.total);
        cat(sub(&f.tan(&d), &t(xv, vv)), sub(&f.nor(&d), &n(xv, vv)))
    })
}

/// `∇_V X = r(X,V)`.
fn vx(f: &Frame, r: impl Fn(&[f64], &[f64]) -> Vec<f64>) -> f64 {
    f.over_xv(|x, v| sub(&f.nab(&v.total, &x.total), &r(val(x), val(v))))
}

/// `tan ∇_X Y = r(X,Y)`.
fn tan_xy(f: &Frame, r: impl Fn(&[f64], &[f64]) -> Vec<f64>) -> f64 {
    f.over_xy(|x, y| sub(&f.tan(&f.nab(&x.total, &y.total)), &r(val(x), val(y))))
}

fn u2(f: &Frame, a: &[f64]) -> f64 {
    dot(&f.data.u2, a)
}

fn zero(f: &Frame) -> Vec<f64> {
    vec![0.0; f.wp.dim()]
}

// horizontal placement

fn h_mixed(f: &Frame) -> f64 {
    let d = &f.data;
    let a = |x: &[f64], v: &[f64]| {
        combine(&[(f.xf(x), v), (-f.u(x), &f.phi2(v)), (-d.f1 * f.u1(x), v)])
    };
    let b = |x: &[f64], v: &[f64]| combine(&[(1.0, &a(x, v)), (f.u(x), &f.phi(v))]);
    mixed_pair(f, a, b)
}

fn h_normal_printed(f: &Frame) -> f64 {
    let d = &f.data;
    normal_plus(f, |v, w| {
        combine(&[(f.gm(&f.phi2(v), w), &d.p), (d.f1 * f.gm(v, w), &d.p1), (-f.gm(&f.phi(v), w), &d.p)])
    })
}

fn h_normal_derived(f: &Frame) -> f64 {
    let d = &f.data;
    normal_plus(f, |v, w| {
        combine(&[
            (f.gm(&f.phi2(v), w), &d.p),
            (d.f1 * f.gm(v, w), &d.p1),
            (-f.gm(&f.phi(v), w), &d.p),
            (-d.f2 * f.gm(v, w), &d.p2),
        ])
    })
}

// vertical placement

fn v_tan_xy(f: &Frame) -> f64 {
    let d = &f.data;
    tan_xy(f, |x, y| {
        combine(&[(-f.gm(&f.phi1(x), y), &d.p), (d.f1 * f.gm(x, y), &d.p1), (-d.f2 * f.gm(x, y), &d.p2)])
    })
}

fn v_xv(f: &Frame, derived: bool) -> f64 {
    let d = &f.data;
    let one = |x: &[f64]| if derived { f.u1(x) } else { f.u(x) };
    let k2 = if derived { 0.0 } else { d.f2 };
    split_xv(
        f,
        |x, v| combine(&[(f.xf(x), v), (-f.u(x), &f.phi2(v)), (-d.f1 * one(x), v)]),
        |x, v| combine(&[(f.u(v), &f.phi1(x)), (-d.f1 * f.u1(v), x), (k2 * u2(f, v), x)]),
    )
}

fn v_xv_printed(f: &Frame) -> f64 {
    v_xv(f, false)
}

fn v_xv_derived(f: &Frame) -> f64 {
    v_xv(f, true)
}

fn v_vx(f: &Frame, derived: bool) -> f64 {
    let d = &f.data;
    let one = |x: &[f64]| if derived { f.u1(x) } else { f.u(x) };
    let k2 = if derived { 0.0 } else { d.f2 };
    vx(f, |x, v| {
        combine(&[
            (f.xf(x), v),
            (-f.u(x), &f.phi2(v)),
            (-d.f1 * one(x), v),
            (f.u(v), &f.phi1(x)),
            (-d.f1 * f.u1(v), x),
            (k2 * u2(f, v), x),
            (-f.u(v), &f.phi(x)),
            (f.u(x), &f.phi(v)),
        ])
    })
}

fn v_vx_printed(f: &Frame) -> f64 {
    v_vx(f, false)
}

fn v_vx_derived(f: &Frame) -> f64 {
    v_vx(f, true)
}

fn v_normal_printed(f: &Frame) -> f64 {
    let d = &f.data;
    normal_plus(f, |v, w| {
        combine(&[(f.gm(&f.phi2(v), w), &d.p), (d.f1 * f.gm(v, w), &d.p), (-f.gm(&f.phi(v), w), &d.p)])
    })
}

// special cases; `U` is read as `P` and `U₂` as `P₂`

fn sym_h_mixed(f: &Frame) -> f64 {
    mixed_pair(f, |x, v| combine(&[(f.xf(x), v)]), |x, v| combine(&[(f.xf(x), v), (f.u(x), &f.phi(v))]))
}

fn ssm_h_normal(f: &Frame) -> f64 {
    normal_plus(f, |v, w| combine(&[(-f.gm(v, w), &f.data.p)]))
}

fn ssm_v_tan_xy(f: &Frame) -> f64 {
    tan_xy(f, |x, y| combine(&[(-f.gm(x, y), &f.data.p)]))
}

fn ssm_v_xv(f: &Frame) -> f64 {
    split_xv(f, |x, v| combine(&[(f.xf(x), v)]), |x, v| combine(&[(f.u(v), x)]))
}

fn plain_vx(f: &Frame) -> f64 {
    vx(f, |x, v| combine(&[(f.xf(x), v)]))
}

fn qsm_h_mixed(f: &Frame) -> f64 {
    let a = |x: &[f64], v: &[f64]| combine(&[(f.xf(x), v), (-f.u(x), &f.phi2(v))]);
    let b = |x: &[f64], v: &[f64]| combine(&[(f.xf(x), v), (-f.u(x), &f.phi2(v)), (f.u(x), &f.phi(v))]);
    mixed_pair(f, a, b)
}

fn qsm_h_normal_printed(f: &Frame) -> f64 {
    normal_plus(f, |v, w| combine(&[(-f.gm(&f.phi(v), w), &f.data.p)]))
}

fn qsm_h_normal_derived(f: &Frame) -> f64 {
    normal_plus(f, |v, w| combine(&[(-f.gm(&f.phi1(v), w), &f.data.p)]))
}

fn qsm_v_tan_xy(f: &Frame) -> f64 {
    tan_xy(f, |x, y| combine(&[(-f.gm(&f.phi1(x), y), &f.data.p)]))
}

fn qsm_v_xv(f: &Frame) -> f64 {
    split_xv(
        f,
        |x, v| combine(&[(f.xf(x), v), (-f.u(x), &f.phi2(v))]),
        |x, v| combine(&[(f.u(v), &f.phi1(x))]),
    )
}

fn qsm_v_vx(f: &Frame) -> f64 {
    vx(f, |x, v| {
        combine(&[
            (f.xf(x), v),
            (-f.u(x), &f.phi2(v)),
            (f.u(v), &f.phi1(x)),
            (-f.u(v), &f.phi(x)),
            (f.u(x), &f.phi(v)),
        ])
    })
}

fn skew_normal_printed(f: &Frame) -> f64 {
    let p = &f.data.p;
    normal_plus(f, |v, w| combine(&[(f.gm(&f.phi2(v), w), p), (-f.gm(&f.phi(v), w), p)]))
}

fn qsnm_h_mixed(f: &Frame) -> f64 {
    mixed_pair(f, |x, v| combine(&[(f.xf(x), v), (-f.u(x), &f.phi(v))]), |x, v| combine(&[(f.xf(x), v)]))
}

fn qsnm_h_normal_printed(f: &Frame) -> f64 {
    let d = &f.data;
    normal_plus(f, |v, w| combine(&[(f.gm(&f.phi2(v), w), &d.p1), (-f.gm(&f.phi(v), w), &d.p)]))
}

fn qsnm_h_normal_derived(f: &Frame) -> f64 {
    normal_plus(f, |v, w| combine(&[(-f.data.f2 * f.gm(v, w), &f.data.p2)]))
}

fn qsnm_v_tan_xy(f: &Frame) -> f64 {
    tan_xy(f, |x, y| combine(&[(-f.data.f2 * f.gm(x, y), &f.data.p2)]))
}

fn qsnm_v_xv(f: &Frame, derived: bool) -> f64 {
    let k2 = if derived { 0.0 } else { f.data.f2 };
    split_xv(
        f,
        |x, v| combine(&[(f.xf(x), v), (-f.u(x), &f.phi(v))]),
        |x, v| if derived { zero(f) } else { combine(&[(k2 * u2(f, v), x)]) },
    )
}

fn qsnm_v_xv_printed(f: &Frame) -> f64 {
    qsnm_v_xv(f, false)
}

fn qsnm_v_xv_derived(f: &Frame) -> f64 {
    qsnm_v_xv(f, true)
}

fn qsnm_v_vx(f: &Frame, derived: bool) -> f64 {
    let k2 = if derived { 0.0 } else { f.data.f2 };
    vx(f, |x, v| {
        combine(&[
            (f.xf(x), v),
            (-f.u(x), &f.phi(v)),
            (k2 * u2(f, v), x),
            (-f.u(v), &f.phi(x)),
            (f.u(x), &f.phi(v)),
        ])
    })
}

fn qsnm_v_vx_printed(f: &Frame) -> f64 {
    qsnm_v_vx(f, false)
}

fn qsnm_v_vx_derived(f: &Frame) -> f64 {
    qsnm_v_vx(f, true)
}

use Placement::{Horizontal as H, Vertical as V};
use PresetId::{
    QuarterSymmetricMetric as Qsm, QuarterSymmetricNonMetric as Qsnm, SemiSymmetricMetric as Ssm,
    SemiSymmetricNonMetric as Ssnm,
};
use Variant::{AsDerived as D, AsPrinted as P};

const U_NOTE: &str = "U read as P, U2 read as P2";

macro_rules! check {
    ($id:literal, $variant:expr, $paired:expr, $scope:expr, $stmt:literal, $note:expr, $f:expr) => {
        Check { id: $id, variant: $variant, paired: $paired, scope: $scope, statement: $stmt, note: $note, eval: $f }
    };
    ($id:literal, $scope:expr, $stmt:literal, $f:expr) => {
        check!($id, P, false, $scope, $stmt, "", $f)
    };
}

const G: Scope = Scope::Global;
const PH: Scope = Scope::Placement(H);
const PV: Scope = Scope::Placement(V);

const fn c(id: PresetId, p: Placement) -> Scope {
    Scope::Corollary(id, p)
}

pub static CHECKS: &[Check] = &[
    check!("thm1.torsion", G, "T(X,Y) = u(Y)φX − u(X)φY", torsion),
    check!("thm1.nonmetricity", G, "(∇_X g)(Y,Z) = 2f1 u1(X) g(Y,Z) + f2{u2(Y) g(X,Z) + u2(Z) g(X,Y)}", nonmetricity),
    check!("lemma21", G, "grad(h∘π) = lift of grad h", gradient_lift),
    check!("prop22.1", G, "∇̊_X Y = lift ¹∇̊_X Y", lc_base_lift),
    check!("prop22.2", G, "∇̊_X V = ∇̊_V X = (XF/F)V", lc_mixed),
    check!("prop22.3", G, "nor ∇̊_V W = −(g(V,W)/F) grad F", lc_normal),
    check!("prop22.4", G, "tan ∇̊_V W = lift ²∇̊_V W", lc_fiber_lift),
    // P, P1, P2 horizontal
    check!("prop31.1", PH, "∇_X Y = lift ¹∇_X Y", base_lift),
    check!(
        "prop31.2",
        PH,
        "∇_X V = (XF/F)V − u(X)φ2V − f1u1(X)V;  ∇_V X = (XF/F)V − u(X)φ2V − f1u1(X)V + u(X)φV",
        h_mixed
    ),
    check!(
        "prop31.3",
        P,
        true,
        PH,
        "nor ∇_V W = −(g(V,W)/F) grad F + g(φ2V,W)P + f1g(V,W)P1 − g(φV,W)P",
        "",
        h_normal_printed
    ),
    check!(
        "prop31.3",
        D,
        true,
        PH,
        "nor ∇_V W = −(g(V,W)/F) grad F + g(φ2V,W)P + f1g(V,W)P1 − g(φV,W)P − f2g(V,W)P2",
        "",
        h_normal_derived
    ),
    check!("prop31.4", P, false, PH, "tan ∇_V W = lift ²∇_V W", "printed operands X, Y read as V, W", fiber_lift_tan),
    // P, P1, P2 vertical
    check!("prop32.1", PV, "nor ∇_X Y = lift ¹∇_X Y", base_lift_nor),
    check!("prop32.2", PV, "tan ∇_X Y = −g(φ1X,Y)P + f1g(X,Y)P1 − f2g(X,Y)P2", v_tan_xy),
    check!(
        "prop32.3",
        P,
        true,
        PV,
        "tan ∇_X V = (XF/F)V − u(X)φ2V − f1u(X)V;  nor ∇_X V = g(P,V)φ1X − f1g(P1,V)X + f2g(P2,V)X",
        "",
        v_xv_printed
    ),
    check!(
        "prop32.3",
        D,
        true,
        PV,
        "tan ∇_X V = (XF/F)V − u(X)φ2V − f1u1(X)V;  nor ∇_X V = g(P,V)φ1X − f1g(P1,V)X",
        "",
        v_xv_derived
    ),
    check!(
        "prop32.4",
        P,
        true,
        PV,
        "∇_V X = (XF/F)V − u(X)φ2V − f1u(X)V + g(P,V)φ1X − f1g(P1,V)X + f2g(P2,V)X − u(V)φX + u(X)φV",
        "",
        v_vx_printed
    ),
    check!(
        "prop32.4",
        D,
        true,
        PV,
        "∇_V X = (XF/F)V − u(X)φ2V − f1u1(X)V + g(P,V)φ1X − f1g(P1,V)X − u(V)φX + u(X)φV",
        "",
        v_vx_derived
    ),
    check!(
        "prop32.5",
        P,
        true,
        PV,
        "nor ∇_V W = −(g(V,W)/F) grad F + g(φ2V,W)P + f1g(V,W)P − g(φV,W)P",
        "",
        v_normal_printed
    ),
    check!("prop32.5", D, true, PV, "nor ∇_V W = −(g(V,W)/F) grad F", "", normal_only),
    check!("prop32.6", PV, "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    // semi-symmetric metric
    check!("cor41.1", c(Ssm, H), "∇_X Y = lift ¹∇_X Y", base_lift),
    check!("cor41.2", c(Ssm, H), "∇_X V = (XF/F)V;  ∇_V X = (XF/F)V + u(X)φV", sym_h_mixed),
    check!("cor41.3", c(Ssm, H), "nor ∇_V W = −(g(V,W)/F) grad F − g(V,W)P", ssm_h_normal),
    check!("cor41.4", c(Ssm, H), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    check!("cor42.1", c(Ssm, V), "nor ∇_X Y = lift ¹∇_X Y", base_lift_nor),
    check!("cor42.2", c(Ssm, V), "tan ∇_X Y = −g(X,Y)P", ssm_v_tan_xy),
    check!("cor42.3", P, false, c(Ssm, V), "tan ∇_X V = (XF/F)V;  nor ∇_X V = g(U,V)X", U_NOTE, ssm_v_xv),
    check!("cor42.4", c(Ssm, V), "∇_V X = (XF/F)V", plain_vx),
    check!("cor42.5", c(Ssm, V), "nor ∇_V W = −(g(V,W)/F) grad F", normal_only),
    check!("cor42.6", c(Ssm, V), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    // semi-symmetric non-metric
    check!("cor43.1", c(Ssnm, H), "∇_X Y = lift ¹∇_X Y", base_lift),
    check!("cor43.2", c(Ssnm, H), "∇_X V = (XF/F)V;  ∇_V X = (XF/F)V + u(X)φV", sym_h_mixed),
    check!("cor43.3", c(Ssnm, H), "nor ∇_V W = −(g(V,W)/F) grad F", normal_only),
    check!("cor43.4", c(Ssnm, H), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    check!("cor44.1", c(Ssnm, V), "∇_X Y = lift ¹∇_X Y", base_lift),
    check!("cor44.2", c(Ssnm, V), "tan ∇_X V = (XF/F)V;  nor ∇_X V = g(P,V)X", ssm_v_xv),
    check!("cor44.3", c(Ssnm, V), "∇_V X = (XF/F)V", plain_vx),
    check!("cor44.4", c(Ssnm, V), "nor ∇_V W = −(g(V,W)/F) grad F", normal_only),
    check!("cor44.5", c(Ssnm, V), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    // quarter-symmetric metric
    check!("cor45.1", c(Qsm, H), "∇_X Y = lift ¹∇_X Y", base_lift),
    check!(
        "cor45.2",
        c(Qsm, H),
        "∇_X V = (XF/F)V − u(X)φ2V;  ∇_V X = (XF/F)V − u(X)φ2V + u(X)φV",
        qsm_h_mixed
    ),
    check!("cor45.3", P, true, c(Qsm, H), "nor ∇_V W = −(g(V,W)/F) grad F − g(φV,W)P", "", qsm_h_normal_printed),
    check!("cor45.3", D, true, c(Qsm, H), "nor ∇_V W = −(g(V,W)/F) grad F − g(φ1V,W)P", "", qsm_h_normal_derived),
    check!("cor45.4", c(Qsm, H), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    check!("cor46.1", c(Qsm, V), "nor ∇_X Y = lift ¹∇_X Y", base_lift_nor),
    check!("cor46.2", c(Qsm, V), "tan ∇_X Y = −g(φ1X,Y)P", qsm_v_tan_xy),
    check!(
        "cor46.3",
        P,
        false,
        c(Qsm, V),
        "tan ∇_X V = (XF/F)V − u(X)φ2V;  nor ∇_X V = g(U,V)φ1X",
        U_NOTE,
        qsm_v_xv
    ),
    check!(
        "cor46.4",
        P,
        false,
        c(Qsm, V),
        "∇_V X = (XF/F)V − u(X)φ2V + g(U,V)φ1X − u(V)φX + u(X)φV",
        U_NOTE,
        qsm_v_vx
    ),
    check!(
        "cor46.5",
        P,
        true,
        c(Qsm, V),
        "nor ∇_V W = −(g(V,W)/F) grad F + g(φ2V,W)U − g(φV,W)U",
        U_NOTE,
        skew_normal_printed
    ),
    check!("cor46.5", D, true, c(Qsm, V), "nor ∇_V W = −(g(V,W)/F) grad F", U_NOTE, normal_only),
    check!("cor46.6", c(Qsm, V), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    // quarter-symmetric non-metric
    check!("cor47.1", c(Qsnm, H), "∇_X Y = lift ¹∇_X Y", base_lift),
    check!("cor47.2", c(Qsnm, H), "∇_X V = (XF/F)V − u(X)φV;  ∇_V X = (XF/F)V", qsnm_h_mixed),
    check!(
        "cor47.3",
        P,
        true,
        c(Qsnm, H),
        "nor ∇_V W = −(g(V,W)/F) grad F + g(φ2V,W)P1 − g(φV,W)P",
        "",
        qsnm_h_normal_printed
    ),
    check!("cor47.3", D, true, c(Qsnm, H), "nor ∇_V W = −(g(V,W)/F) grad F − f2g(V,W)P2", "", qsnm_h_normal_derived),
    check!("cor47.4", c(Qsnm, H), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
    check!("cor48.1", c(Qsnm, V), "nor ∇_X Y = lift ¹∇_X Y", base_lift_nor),
    check!("cor48.2", c(Qsnm, V), "tan ∇_X Y = −f2g(X,Y)P2", qsnm_v_tan_xy),
    check!(
        "cor48.3",
        P,
        true,
        c(Qsnm, V),
        "tan ∇_X V = (XF/F)V − u(X)φV;  nor ∇_X V = f2g(U2,V)X",
        U_NOTE,
        qsnm_v_xv_printed
    ),
    check!("cor48.3", D, true, c(Qsnm, V), "tan ∇_X V = (XF/F)V − u(X)φV;  nor ∇_X V = 0", U_NOTE, qsnm_v_xv_derived),
    check!(
        "cor48.4",
        P,
        true,
        c(Qsnm, V),
        "∇_V X = (XF/F)V − u(X)φV + f2g(U2,V)X − u(V)φX + u(X)φV",
        U_NOTE,
        qsnm_v_vx_printed
    ),
    check!("cor48.4", D, true, c(Qsnm, V), "∇_V X = (XF/F)V − u(X)φV − u(V)φX + u(X)φV", U_NOTE, qsnm_v_vx_derived),
    check!(
        "cor48.5",
        P,
        false,
        c(Qsnm, V),
        "nor ∇_V W = −(g(V,W)/F) grad F + g(φ2V,W)U − g(φV,W)U",
        U_NOTE,
        skew_normal_printed
    ),
    check!("cor48.6", c(Qsnm, V), "tan ∇_V W = lift ²∇_V W", fiber_lift_tan),
];
