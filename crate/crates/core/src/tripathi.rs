//! The Tripathi connection
//!
//! ```text
//! ∇_X Y = ∇̊_X Y + u(Y)φ₁X − u(X)φ₂Y − g(φ₁X,Y)P
//!         − f₁{u₁(X)Y + u₁(Y)X − g(X,Y)P₁} − f₂ g(X,Y)P₂
//! ```
//!
//! with `u = g(P,·)`, `u₁ = g(P₁,·)`, `u₂ = g(P₂,·)` and `φ₁`, `φ₂` the
//! `g`-symmetric and `g`-skew parts of `φ`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Jet, Point, Scalar, ScalarExpr};
use crate::geometry::{
    covariant, koszul_at, levi_civita, split_phi, ChartMetric, Connection, FieldJet, Tensor11Field, VectorField,
};
use crate::linalg::{combine, dot, inner, max_norm, Coefficients, Mat, Matrix};

/// The data `(f₁, f₂, P, P₁, P₂, φ)` over one chart.
#[derive(Debug, Clone)]
pub struct TripathiData {
    pub f1: ScalarExpr,
    pub f2: ScalarExpr,
    pub p: VectorField,
    pub p1: VectorField,
    pub p2: VectorField,
    pub phi: Tensor11Field,
}

impl TripathiData {
    pub fn new(
        f1: ScalarExpr,
        f2: ScalarExpr,
        p: VectorField,
        p1: VectorField,
        p2: VectorField,
        phi: Tensor11Field,
    ) -> Result<TripathiData> {
        let vars = f1.vars();
        let same = f2.vars() == vars && p.vars() == vars && p1.vars() == vars && p2.vars() == vars && phi.vars() == vars;
        if !same {
            return Err(Error::ChartMismatch("connection data fields are over different coordinates".into()));
        }
        Ok(TripathiData { f1, f2, p, p1, p2, phi })
    }

    /// All-zero data; the connection is then Levi-Civita.
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Result<TripathiData> {
        let f = ScalarExpr::constant(0.0, vars)?;
        let v = VectorField::zero(vars)?;
        Ok(TripathiData { f1: f.clone(), f2: f, p: v.clone(), p1: v.clone(), p2: v, phi: Tensor11Field::zero(vars)? })
    }

    pub fn vars(&self) -> &[String] {
        self.f1.vars()
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    fn eval<S: Scalar>(&self, p: &Point) -> Result<RawData<S>> {
        let o = S::CARRIED_ORDER;
        Ok(RawData {
            f1: S::from_jet(&self.f1.eval_jet(p, o)?),
            f2: S::from_jet(&self.f2.eval_jet(p, o)?),
            p: self.p.eval(p)?,
            p1: self.p1.eval(p)?,
            p2: self.p2.eval(p)?,
            phi: self.phi.eval(p)?,
        })
    }
}

struct RawData<S> {
    f1: S,
    f2: S,
    p: Vec<S>,
    p1: Vec<S>,
    p2: Vec<S>,
    phi: Mat<S>,
}

/// Connection data and everything derived from it at one point.
#[derive(Debug, Clone)]
pub struct DataAt {
    pub f1: f64,
    pub f2: f64,
    pub p: Vec<f64>,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    pub u: Vec<f64>,
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
    pub phi: Matrix,
    pub phi1: Matrix,
    pub phi2: Matrix,
}

impl DataAt {
    /// Builds the derived quantities from raw values and the metric at a point.
    pub fn from_values(
        g: &Matrix,
        f1: f64,
        f2: f64,
        p: Vec<f64>,
        p1: Vec<f64>,
        p2: Vec<f64>,
        phi: Matrix,
    ) -> Option<DataAt> {
        let ginv = g.inverse()?;
        let s = split_phi(g, &ginv, &phi);
        Some(DataAt {
            f1,
            f2,
            u: g.mul_vec(&p),
            u1: g.mul_vec(&p1),
            u2: g.mul_vec(&p2),
            p,
            p1,
            p2,
            phi,
            phi1: s.phi1,
            phi2: s.phi2,
        })
    }

    /// `A(X,Y) = ∇_X Y − ∇̊_X Y`, evaluated from the operator form.
    pub fn deformation(&self, g: &Matrix, x: &[f64], y: &[f64]) -> Vec<f64> {
        let phi1x = self.phi1.mul_vec(x);
        let phi2y = self.phi2.mul_vec(y);
        let gxy = inner(g, x, y);
        combine(&[
            (dot(&self.u, y), &phi1x),
            (-dot(&self.u, x), &phi2y),
            (-inner(g, &phi1x, y), &self.p),
            (-self.f1 * dot(&self.u1, x), y),
            (-self.f1 * dot(&self.u1, y), x),
            (self.f1 * gxy, &self.p1),
            (-self.f2 * gxy, &self.p2),
        ])
    }

    /// `u(Y)φX − u(X)φY`.
    pub fn torsion_claimed(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        combine(&[(dot(&self.u, y), &self.phi.mul_vec(x)), (-dot(&self.u, x), &self.phi.mul_vec(y))])
    }

    /// `2f₁u₁(X)g(Y,Z) + f₂{u₂(Y)g(X,Z) + u₂(Z)g(X,Y)}`.
    pub fn nonmetricity_claimed(&self, g: &Matrix, x: &[f64], y: &[f64], z: &[f64]) -> f64 {
        2.0 * self.f1 * dot(&self.u1, x) * inner(g, y, z)
            + self.f2 * (dot(&self.u2, y) * inner(g, x, z) + dot(&self.u2, z) * inner(g, x, y))
    }
}

/// `Γ̃ᵏᵢⱼ = Γᵏᵢⱼ + uⱼφ₁ᵏᵢ − uᵢφ₂ᵏⱼ − Φ₁ᵢⱼPᵏ − f₁(u₁ᵢδᵏⱼ + u₁ⱼδᵏᵢ − gᵢⱼP₁ᵏ) − f₂gᵢⱼP₂ᵏ`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn assemble<S: Scalar>(
    g: &Mat<S>,
    ginv: &Mat<S>,
    lc: &Coefficients<S>,
    f1: &S,
    f2: &S,
    p: &[S],
    p1: &[S],
    p2: &[S],
    phi: &Mat<S>,
) -> Coefficients<S> {
    let n = g.dim();
    let u = g.mul_vec(p);
    let u1 = g.mul_vec(p1);
    let s = split_phi(g, ginv, phi);
    Coefficients::from_fn(n, |k, i, j| {
        let mut v = lc[(k, i, j)].clone() + u[j].clone() * s.phi1[(k, i)].clone()
            - u[i].clone() * s.phi2[(k, j)].clone()
            - s.sym[(i, j)].clone() * p[k].clone();
        let mut inner = g[(i, j)].clone() * (-p1[k].clone());
        if k == j {
            inner = inner + u1[i].clone();
        }
        if k == i {
            inner = inner + u1[j].clone();
        }
        v = v - f1.clone() * inner - f2.clone() * g[(i, j)].clone() * p2[k].clone();
        v
    })
}

/// Assembles coefficients from pointwise values, e.g. for a factor connection
/// whose data is frozen at a point.
#[allow(clippy::too_many_arguments)]
pub fn assemble_values(g: &Matrix, lc: &Coefficients<f64>, d: &DataAt) -> Option<Coefficients<f64>> {
    let ginv = g.inverse()?;
    Some(assemble(g, &ginv, lc, &d.f1, &d.f2, &d.p, &d.p1, &d.p2, &d.phi))
}

/// A Tripathi connection on a chart.
#[derive(Debug, Clone)]
pub struct TripathiConnection {
    metric: ChartMetric,
    data: TripathiData,
}

impl TripathiConnection {
    pub fn new(metric: &ChartMetric, data: TripathiData) -> Result<TripathiConnection> {
        if data.vars() != metric.names() {
            return Err(Error::ChartMismatch(format!(
                "connection data is over {:?}, metric over {:?}",
                data.vars(),
                metric.names()
            )));
        }
        Ok(TripathiConnection { metric: metric.clone(), data })
    }

    pub fn metric(&self) -> &ChartMetric {
        &self.metric
    }

    pub fn data(&self) -> &TripathiData {
        &self.data
    }

    fn assemble_at<S: Scalar>(&self, p: &Point) -> Result<Coefficients<S>> {
        let me = self.metric.eval::<S>(p)?;
        let lc = levi_civita(&me);
        let d = self.data.eval::<S>(p)?;
        Ok(assemble(&me.g, &me.ginv, &lc, &d.f1, &d.f2, &d.p, &d.p1, &d.p2, &d.phi))
    }

    pub fn data_at(&self, p: &Point) -> Result<DataAt> {
        let g = self.metric.values_at(p)?;
        let d = self.data.eval::<f64>(p)?;
        DataAt::from_values(&g, d.f1, d.f2, d.p, d.p1, d.p2, d.phi)
            .ok_or_else(|| Error::Singular { point: p.coords().to_vec() })
    }

    /// `∇̊_X Y + A(X,Y)` with `∇̊` from the Koszul formula; shares no code
    /// with the coefficient assembly.
    pub fn operator_form_at(&self, x: &VectorField, y: &VectorField, p: &Point) -> Result<Vec<f64>> {
        let lc = koszul_at(&self.metric, x, y, p)?;
        let g = self.metric.values_at(p)?;
        let d = self.data_at(p)?;
        let a = d.deformation(&g, &x.value_at(p)?, &y.value_at(p)?);
        Ok(lc.iter().zip(&a).map(|(s, t)| s + t).collect())
    }

    pub fn torsion_claimed_at(&self, x: &VectorField, y: &VectorField, p: &Point) -> Result<Vec<f64>> {
        let d = self.data_at(p)?;
        Ok(d.torsion_claimed(&x.value_at(p)?, &y.value_at(p)?))
    }

    pub fn nonmetricity_claimed_at(&self, x: &VectorField, y: &VectorField, z: &VectorField, p: &Point) -> Result<f64> {
        let g = self.metric.values_at(p)?;
        let d = self.data_at(p)?;
        Ok(d.nonmetricity_claimed(&g, &x.value_at(p)?, &y.value_at(p)?, &z.value_at(p)?))
    }

    /// `∇_X Y` from precomputed field jets.
    pub fn apply(coeffs: &Coefficients<f64>, x: &[f64], y: &FieldJet) -> Vec<f64> {
        covariant(coeffs, x, y)
    }
}

impl Connection for TripathiConnection {
    fn dim(&self) -> usize {
        self.metric.dim()
    }

    fn coefficients_at(&self, p: &Point) -> Result<Coefficients<f64>> {
        self.assemble_at::<f64>(p)
    }

    fn coefficient_jets_at(&self, p: &Point) -> Result<Coefficients<Jet>> {
        self.assemble_at::<Jet>(p)
    }
}

/// `(u, u₁, u₂)` at `p`, as covector components `uᵢ = gᵢⱼPʲ`.
pub fn one_forms_at(m: &ChartMetric, d: &TripathiData, p: &Point) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let g = m.values_at(p)?;
    Ok((g.mul_vec(&d.p.value_at(p)?), g.mul_vec(&d.p1.value_at(p)?), g.mul_vec(&d.p2.value_at(p)?)))
}

pub fn coefficients_at(m: &ChartMetric, d: &TripathiData, p: &Point) -> Result<Coefficients<f64>> {
    TripathiConnection::new(m, d.clone())?.coefficients_at(p)
}

/// The named special cases of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresetId {
    LeviCivita,
    SemiSymmetricMetric,
    SemiSymmetricNonMetric,
    QuarterSymmetricMetric,
    QuarterSymmetricNonMetric,
}

impl PresetId {
    pub const ALL: [PresetId; 5] = [
        PresetId::LeviCivita,
        PresetId::SemiSymmetricMetric,
        PresetId::SemiSymmetricNonMetric,
        PresetId::QuarterSymmetricMetric,
        PresetId::QuarterSymmetricNonMetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresetId::LeviCivita => "levi_civita",
            PresetId::SemiSymmetricMetric => "semi_symmetric_metric",
            PresetId::SemiSymmetricNonMetric => "semi_symmetric_non_metric",
            PresetId::QuarterSymmetricMetric => "quarter_symmetric_metric",
            PresetId::QuarterSymmetricNonMetric => "quarter_symmetric_non_metric",
        }
    }

    /// Parameters the caller must supply.
    pub fn free_params(self) -> &'static [&'static str] {
        match self {
            PresetId::LeviCivita => &[],
            PresetId::SemiSymmetricMetric | PresetId::SemiSymmetricNonMetric => &["P"],
            PresetId::QuarterSymmetricMetric => &["P", "phi"],
            PresetId::QuarterSymmetricNonMetric => &["P", "P2", "f2", "phi"],
        }
    }

    /// What the preset pins, in the family's notation.
    pub fn fixed(self) -> &'static str {
        match self {
            PresetId::LeviCivita => "f1 = f2 = 0, P = P1 = P2 = 0, phi = 0",
            PresetId::SemiSymmetricMetric => "f1 = f2 = 0, phi = Id, P1 = P2 = 0",
            PresetId::SemiSymmetricNonMetric => "f1 = 0, f2 = -1, phi = Id, P1 = 0, P2 = P",
            PresetId::QuarterSymmetricMetric => "f1 = f2 = 0, P1 = P2 = 0",
            PresetId::QuarterSymmetricNonMetric => "f1 = 0, P1 = 0, phi must be g-skew (phi1 = 0)",
        }
    }

    pub fn is_metric(self) -> bool {
        matches!(self, PresetId::LeviCivita | PresetId::SemiSymmetricMetric | PresetId::QuarterSymmetricMetric)
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<PresetId> {
        PresetId::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::Manifest {
            field: "connection.preset".into(),
            msg: format!(
                "unknown preset `{s}`; expected one of {}",
                PresetId::ALL.map(PresetId::name).join(", ")
            ),
        })
    }
}

/// Caller-supplied fields for [`preset`]; every field the preset leaves free
/// must be present and every field it pins must be absent.
#[derive(Debug, Clone, Default)]
pub struct PresetParams {
    pub f1: Option<ScalarExpr>,
    pub f2: Option<ScalarExpr>,
    pub p: Option<VectorField>,
    pub p1: Option<VectorField>,
    pub p2: Option<VectorField>,
    pub phi: Option<Tensor11Field>,
}

impl PresetParams {
    fn supplied(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.f1.is_some() {
            out.push("f1");
        }
        if self.f2.is_some() {
            out.push("f2");
        }
        if self.p.is_some() {
            out.push("P");
        }
        if self.p1.is_some() {
            out.push("P1");
        }
        if self.p2.is_some() {
            out.push("P2");
        }
        if self.phi.is_some() {
            out.push("phi");
        }
        out
    }
}

/// Relative size below which the symmetric part of `φ` counts as zero.
const SKEW_TOL: f64 = 1e-12;

/// Populates [`TripathiData`] for a preset. For the quarter-symmetric
/// non-metric case `φ₁ = 0` is checked at every probe point.
pub fn preset(id: PresetId, params: PresetParams, chart: &ChartMetric, probes: &[Point]) -> Result<TripathiData> {
    let name = id.name();
    let free = id.free_params();
    for s in params.supplied() {
        if !free.contains(&s) {
            return Err(Error::Preset { preset: name, detail: format!("`{s}` is fixed by this preset") });
        }
    }
    let vars: Arc<[String]> = chart.shared_names().clone();
    let need = |what: &str| Error::Preset { preset: name, detail: format!("missing required parameter `{what}`") };
    let check_vars = |what: &str, v: &[String]| -> Result<()> {
        if v != &vars[..] {
            return Err(Error::Preset {
                preset: name,
                detail: format!("`{what}` is over {v:?}, chart is over {:?}", &vars[..]),
            });
        }
        Ok(())
    };
    let zero_f = ScalarExpr::constant_shared(0.0, &vars);
    let zero_v = VectorField::constant_shared(&vec![0.0; vars.len()], &vars);
    let id_phi = Tensor11Field::constant_shared(&Matrix::identity(vars.len()), &vars);
    let p = match (free.contains(&"P"), params.p) {
        (true, Some(p)) => {
            check_vars("P", p.vars())?;
            p
        }
        (true, None) => return Err(need("P")),
        (false, _) => zero_v.clone(),
    };
    let data = match id {
        PresetId::LeviCivita => TripathiData::zero(&vars)?,
        PresetId::SemiSymmetricMetric => TripathiData::new(zero_f.clone(), zero_f, p, zero_v.clone(), zero_v, id_phi)?,
        PresetId::SemiSymmetricNonMetric => {
            let f2 = ScalarExpr::constant_shared(-1.0, &vars);
            TripathiData::new(zero_f, f2, p.clone(), zero_v, p, id_phi)?
        }
        PresetId::QuarterSymmetricMetric => {
            let phi = params.phi.ok_or_else(|| need("phi"))?;
            check_vars("phi", phi.vars())?;
            TripathiData::new(zero_f.clone(), zero_f, p, zero_v.clone(), zero_v, phi)?
        }
        PresetId::QuarterSymmetricNonMetric => {
            let phi = params.phi.ok_or_else(|| need("phi"))?;
            let p2 = params.p2.ok_or_else(|| need("P2"))?;
            let f2 = params.f2.ok_or_else(|| need("f2"))?;
            check_vars("phi", phi.vars())?;
            check_vars("P2", p2.vars())?;
            check_vars("f2", f2.vars())?;
            for q in probes {
                let (g, ginv) = crate::geometry::metric_at(chart, q)?;
                let phv = phi.value_at(q)?;
                let s = split_phi(&g, &ginv, &phv);
                let scale = max_norm(phv.as_slice()).max(1.0);
                let worst = max_norm(s.phi1.as_slice());
                if worst > SKEW_TOL * scale {
                    return Err(Error::Preset {
                        preset: name,
                        detail: format!(
                            "phi has a g-symmetric part of size {worst:e} at {:?}; this preset needs phi1 = 0",
                            q.coords()
                        ),
                    });
                }
            }
            TripathiData::new(zero_f, f2, p, zero_v, p2, phi)?
        }
    };
    if data.dim() != chart.dim() {
        return Err(Error::Dimension { what: "preset data".into(), expected: chart.dim(), got: data.dim() });
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{christoffel_at, nonmetricity_at, torsion_at};

    fn polar() -> ChartMetric {
        ChartMetric::diagonal(&["r", "θ"], &["1", "r^2"]).unwrap()
    }

    fn vf(c: &[&str]) -> VectorField {
        VectorField::parse(c, &["r", "θ"]).unwrap()
    }

    fn with_p(id: PresetId, p: &[&str]) -> TripathiData {
        let params = PresetParams { p: Some(vf(p)), ..Default::default() };
        preset(id, params, &polar(), &[]).unwrap()
    }

    #[test]
    fn one_forms_on_polar() {
        let m = polar();
        let at = Point::of(&[2.0, 0.5]);
        let d = with_p(PresetId::SemiSymmetricMetric, &["0", "1"]);
        let (u, u1, u2) = one_forms_at(&m, &d, &at).unwrap();
        assert_eq!(u, vec![0.0, 4.0]);
        assert_eq!(u1, vec![0.0, 0.0]);
        assert_eq!(u2, vec![0.0, 0.0]);
        let d = with_p(PresetId::SemiSymmetricMetric, &["1", "0"]);
        assert_eq!(one_forms_at(&m, &d, &at).unwrap().0, vec![1.0, 0.0]);
    }

    #[test]
    fn zero_data_gives_christoffels() {
        let m = polar();
        let at = Point::of(&[1.3, 0.2]);
        let d = preset(PresetId::LeviCivita, PresetParams::default(), &m, &[]).unwrap();
        assert_eq!(coefficients_at(&m, &d, &at).unwrap(), christoffel_at(&m, &at).unwrap());
    }

    #[test]
    fn semi_symmetric_metric_coefficient() {
        let m = polar();
        let d = with_p(PresetId::SemiSymmetricMetric, &["1", "0"]);
        let c = coefficients_at(&m, &d, &Point::of(&[2.0, 1.0])).unwrap();
        assert_eq!(c[(0, 1, 1)], -6.0);
    }

    #[test]
    fn semi_symmetric_torsion_on_polar() {
        let m = polar();
        let d = with_p(PresetId::SemiSymmetricMetric, &["1", "0"]);
        let conn = TripathiConnection::new(&m, d).unwrap();
        let at = Point::of(&[2.0, 0.0]);
        let (x, y) = (vf(&["1", "0"]), vf(&["0", "1"]));
        assert_eq!(torsion_at(&conn, &x, &y, &at).unwrap(), vec![0.0, -1.0]);
        assert_eq!(conn.torsion_claimed_at(&x, &y, &at).unwrap(), vec![0.0, -1.0]);
        assert_eq!(conn.torsion_claimed_at(&x, &x, &at).unwrap(), vec![0.0, 0.0]);
        let z = vf(&["r", "θ^2"]);
        assert!(nonmetricity_at(&conn, &m, &x, &y, &z, &at).unwrap().abs() < 1e-12);
    }

    #[test]
    fn semi_symmetric_non_metric_on_polar() {
        let m = polar();
        let d = with_p(PresetId::SemiSymmetricNonMetric, &["1", "0"]);
        let conn = TripathiConnection::new(&m, d).unwrap();
        let at = Point::of(&[2.0, 0.0]);
        let (er, et) = (vf(&["1", "0"]), vf(&["0", "1"]));
        let raw = nonmetricity_at(&conn, &m, &et, &er, &et, &at).unwrap();
        assert!((raw + 4.0).abs() < 1e-12, "{raw}");
        assert!((conn.nonmetricity_claimed_at(&et, &er, &et, &at).unwrap() + 4.0).abs() < 1e-12);
    }

    #[test]
    fn preset_parameter_validation() {
        let m = polar();
        let err = preset(PresetId::SemiSymmetricMetric, PresetParams::default(), &m, &[]).unwrap_err();
        assert!(matches!(err, Error::Preset { .. }));
        let params = PresetParams {
            p: Some(vf(&["1", "0"])),
            f2: Some(ScalarExpr::parse("1", &["r", "θ"]).unwrap()),
            ..Default::default()
        };
        assert!(preset(PresetId::SemiSymmetricMetric, params, &m, &[]).is_err());

        let sym = Tensor11Field::parse(&[vec!["1", "0"], vec!["0", "2"]], &["r", "θ"]).unwrap();
        let params = PresetParams {
            p: Some(vf(&["1", "0"])),
            p2: Some(vf(&["0", "1"])),
            f2: Some(ScalarExpr::parse("0.5", &["r", "θ"]).unwrap()),
            phi: Some(sym),
            ..Default::default()
        };
        let probes = [Point::of(&[1.0, 0.0])];
        assert!(preset(PresetId::QuarterSymmetricNonMetric, params.clone(), &m, &probes).is_err());
        // g-skew under diag(1, r²): φ = [[0, r²], [−1, 0]]
        let skew = Tensor11Field::parse(&[vec!["0", "r^2"], vec!["-1", "0"]], &["r", "θ"]).unwrap();
        let ok = PresetParams { phi: Some(skew), ..params };
        assert!(preset(PresetId::QuarterSymmetricNonMetric, ok, &m, &probes).is_ok());
    }

    #[test]
    fn quarter_symmetric_with_identity_is_semi_symmetric() {
        let m = polar();
        let p = vf(&["sin(θ)", "r"]);
        let a = preset(
            PresetId::QuarterSymmetricMetric,
            PresetParams { p: Some(p.clone()), phi: Some(Tensor11Field::identity(&["r", "θ"]).unwrap()), ..Default::default() },
            &m,
            &[],
        )
        .unwrap();
        let b = preset(PresetId::SemiSymmetricMetric, PresetParams { p: Some(p), ..Default::default() }, &m, &[]).unwrap();
        let at = Point::of(&[1.4, 0.7]);
        let ca = coefficients_at(&m, &a, &at).unwrap();
        let cb = coefficients_at(&m, &b, &at).unwrap();
        assert!(ca.max_abs_diff(&cb) <= 1e-12);
    }

    #[test]
    fn operator_form_matches_coefficients() {
        let m = ChartMetric::new(&["x", "y"], &[vec!["2 + sin(x)", "0.3*y"], vec!["0.3*y", "1 + x^2"]]).unwrap();
        let v = |c: &[&str]| VectorField::parse(c, &["x", "y"]).unwrap();
        let d = TripathiData::new(
            ScalarExpr::parse("x*y", &["x", "y"]).unwrap(),
            ScalarExpr::parse("cos(y)", &["x", "y"]).unwrap(),
            v(&["1", "y"]),
            v(&["x", "-1"]),
            v(&["0.5", "x*y"]),
            Tensor11Field::parse(&[vec!["x", "1"], vec!["y^2", "-2"]], &["x", "y"]).unwrap(),
        )
        .unwrap();
        let conn = TripathiConnection::new(&m, d).unwrap();
        let at = Point::of(&[0.3, -0.8]);
        let (x, y) = (v(&["x^2", "1 - y"]), v(&["exp(y)", "x"]));
        let a = crate::geometry::cov_deriv_at(&conn, &x, &y, &at).unwrap();
        let b = conn.operator_form_at(&x, &y, &at).unwrap();
        assert!(a.iter().zip(&b).all(|(s, t)| (s - t).abs() < 1e-12), "{a:?} {b:?}");
        let t = torsion_at(&conn, &x, &y, &at).unwrap();
        let tc = conn.torsion_claimed_at(&x, &y, &at).unwrap();
        assert!(t.iter().zip(&tc).all(|(s, t)| (s - t).abs() < 1e-12));
        let z = v(&["y", "x + 1"]);
        let nm = nonmetricity_at(&conn, &m, &x, &y, &z, &at).unwrap();
        let nc = conn.nonmetricity_claimed_at(&x, &y, &z, &at).unwrap();
        assert!((nm - nc).abs() < 1e-12, "{nm} {nc}");
    }
}
