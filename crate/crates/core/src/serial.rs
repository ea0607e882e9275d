//! Canonical JSON forms of rings, elements, series, symbols and audit reports, plus the
//! audit input format.
//!
//! Ring elements are written as least nonnegative residues in decimal strings, so equal
//! values always serialize to identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coeff_ring::{GrElem, Ring, RingDesc};
use crate::error::{Error, Result};
use crate::laurent::{LaurentUnit, WittData};
use crate::surface::{
    verify_global_weil, verify_point_reciprocity_at, verify_vertical_reciprocity, Atom, AuditKind, AuditReport, Base,
    FactoredFunction, LocalValue, PlaceKind,
};
use crate::symbols::SymbolValue;
use crate::weierstrass::{DistinguishedPrime, PreparedForm};
use crate::{GrPoly, IntPoly, Poly, RatPoly};

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| Error::InvalidInput(format!("not an integer: {s:?}")))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse().map_err(|_| Error::InvalidInput(format!("not a rational number: {s:?}")))
}

/// `GR(p^N, d)` presented by the monic modulus `H` (ascending coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u32,
    pub d: usize,
    #[serde(rename = "H")]
    pub h: Vec<String>,
}

impl RingJson {
    pub fn from_ring(r: &Ring) -> Self {
        RingJson { p: r.p(), n: r.n(), d: r.d(), h: r.h().iter().map(u64::to_string).collect() }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        let h = self.h.iter().map(|c| parse_int(c)).collect::<Result<Vec<_>>>()?;
        let ring = RingDesc::new(self.p, self.n, &h)?;
        if ring.d() != self.d {
            return Err(Error::InvalidInput(format!("d = {} disagrees with deg H = {}", self.d, ring.d())));
        }
        Ok(ring)
    }
}

/// A Galois ring element: the ring tag and the little-endian coordinates in `Z/p^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrElemJson {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: u32,
    pub d: usize,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    pub coords: Vec<String>,
}

impl GrElemJson {
    pub fn from_elem(a: &GrElem) -> Self {
        let r = RingJson::from_ring(a.ring());
        GrElemJson { p: r.p, n: r.n, d: r.d, h: r.h, coords: a.coords().iter().map(u64::to_string).collect() }
    }

    fn ring_json(&self) -> RingJson {
        RingJson { p: self.p, n: self.n, d: self.d, h: self.h.clone() }
    }

    pub fn to_elem(&self) -> Result<GrElem> {
        self.to_elem_in(&self.ring_json().to_ring()?)
    }

    /// Decode into an already constructed ring, which must match the tag.
    pub fn to_elem_in(&self, ring: &Ring) -> Result<GrElem> {
        if self.ring_json() != RingJson::from_ring(ring) {
            return Err(Error::MixedRings);
        }
        if self.coords.len() != ring.d() {
            return Err(Error::InvalidInput(format!("expected {} coordinates", ring.d())));
        }
        let coords = self.coords.iter().map(|c| parse_int(c)).collect::<Result<Vec<_>>>()?;
        GrElem::from_coords(ring, &coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolValueJson {
    pub p_val: i64,
    pub unit: GrElemJson,
    pub prec: u32,
}

impl SymbolValueJson {
    pub fn from_value(v: &SymbolValue) -> Self {
        SymbolValueJson { p_val: v.p_val, unit: GrElemJson::from_elem(&v.unit), prec: v.prec }
    }

    pub fn to_value(&self) -> Result<SymbolValue> {
        let unit = self.unit.to_elem()?;
        if !unit.is_unit() {
            return Err(Error::InvalidInput("symbol unit is not a unit".into()));
        }
        Ok(SymbolValue::new(self.p_val, unit, self.prec))
    }
}

/// `p^{p_exp} · Σ c_k T^k`. `exact` series are Laurent polynomials; otherwise the
/// coefficients are known on `window` and nothing is claimed beyond it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub p_exp: i64,
    pub window: (i64, i64),
    pub exact: bool,
    pub coeffs: Vec<(i64, GrElemJson)>,
}

impl LaurentJson {
    pub fn from_unit(f: &LaurentUnit) -> Self {
        LaurentJson {
            p_exp: f.p_exp(),
            window: f.window(),
            exact: f.is_exact(),
            coeffs: f.series().terms().map(|(k, c)| (k, GrElemJson::from_elem(c))).collect(),
        }
    }

    pub fn to_unit(&self, ring: &Ring) -> Result<LaurentUnit> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (k, c) in &self.coeffs {
            terms.push((*k, c.to_elem_in(ring)?));
        }
        terms.sort_by_key(|t| t.0);
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("repeated exponent".into()));
        }
        let window = (!self.exact).then_some(self.window);
        LaurentUnit::make(ring, self.p_exp, &terms, window)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittJson {
    pub w: i64,
    pub p_exp: i64,
    pub f0: GrElemJson,
    /// `(i, f_{-i})`.
    pub neg: Vec<(i64, GrElemJson)>,
    /// `(i, f_i)`.
    pub pos: Vec<(i64, GrElemJson)>,
    /// Largest `i` with `f_i` determined; `null` when every `f_i` is.
    pub pos_known: Option<i64>,
}

impl WittJson {
    pub fn from_data(wd: &WittData) -> Self {
        let list = |v: &[(i64, GrElem)]| v.iter().map(|(i, c)| (*i, GrElemJson::from_elem(c))).collect();
        WittJson {
            w: wd.w,
            p_exp: wd.p_exp,
            f0: GrElemJson::from_elem(&wd.f0),
            neg: list(&wd.neg),
            pos: list(&wd.pos),
            pos_known: (wd.pos_known != i64::MAX).then_some(wd.pos_known),
        }
    }
}

/// Dense ascending coefficient list of a polynomial over `Z/p^N`, or coordinate lists over `GR`.
fn gr_poly_json(f: &GrPoly) -> Vec<Vec<String>> {
    f.coeffs().iter().map(|c| c.coords().iter().map(u64::to_string).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreparedJson {
    pub ring: RingJson,
    pub f0_p_val: i64,
    pub f0_unit: Vec<String>,
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
    pub u: Vec<Vec<String>>,
}

impl PreparedJson {
    pub fn from_form(pf: &PreparedForm) -> Self {
        PreparedJson {
            ring: RingJson::from_ring(pf.ring()),
            f0_p_val: pf.f0.0,
            f0_unit: pf.f0.1.coords().iter().map(u64::to_string).collect(),
            a: gr_poly_json(&pf.a),
            b: gr_poly_json(&pf.b),
            u: gr_poly_json(&pf.u),
        }
    }
}

/// One factor `atom^exp` of an input function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomJson {
    /// `const`, `monomial`, `distinguished`, `unit` or `poly`.
    pub kind: String,
    /// Ascending coefficients as rational strings; empty for `monomial`.
    #[serde(default)]
    pub coeffs: Vec<String>,
    #[serde(default = "one_i64")]
    pub exp: i64,
}

fn one_i64() -> i64 {
    1
}

impl AtomJson {
    pub fn from_atom(a: &Atom, exp: i64) -> Self {
        let coeffs = match a {
            Atom::Monomial => Vec::new(),
            other => other.to_poly().coeffs().iter().map(|c| c.to_string()).collect(),
        };
        AtomJson { kind: a.kind().into(), coeffs, exp }
    }

    /// `p` is needed by the kinds whose invariants depend on it.
    pub fn to_atom(&self, p: Option<u64>) -> Result<(Atom, i64)> {
        let rats = self.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        let ints = || -> Result<IntPoly> {
            rats.iter()
                .map(|c| {
                    c.is_integer()
                        .then(|| c.to_integer())
                        .ok_or_else(|| Error::InvalidInput(format!("{} atom needs integer coefficients", self.kind)))
                })
                .collect::<Result<Vec<_>>>()
                .map(Poly::from_coeffs)
        };
        let need_p = || p.ok_or_else(|| Error::InvalidInput(format!("{} atom needs p", self.kind)));
        let atom = match self.kind.as_str() {
            "const" => match rats.as_slice() {
                [c] => Atom::constant(c.clone())?,
                _ => return Err(Error::InvalidInput("const atom takes one coefficient".into())),
            },
            "monomial" => {
                if !(rats.is_empty()
                    || rats == [BigRational::from_integer(0.into()), BigRational::from_integer(1.into())])
                {
                    return Err(Error::InvalidInput("monomial atom takes no coefficients".into()));
                }
                Atom::Monomial
            }
            "distinguished" => Atom::Distinguished(DistinguishedPrime::new(ints()?, need_p()?)?),
            "unit" => Atom::unit_poly(ints()?, need_p()?)?,
            "poly" => Atom::poly(RatPoly::from_coeffs(rats))?,
            other => return Err(Error::InvalidInput(format!("unknown atom kind {other:?}"))),
        };
        Ok((atom, self.exp))
    }
}

pub fn function_from_json(atoms: &[AtomJson], p: Option<u64>) -> Result<FactoredFunction> {
    Ok(FactoredFunction::new(atoms.iter().map(|a| a.to_atom(p)).collect::<Result<_>>()?))
}

pub fn function_to_json(f: &FactoredFunction) -> Vec<AtomJson> {
    f.atoms.iter().map(|(a, e)| AtomJson::from_atom(a, *e)).collect()
}

/// `"Q"` or a prime `q` for `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseJson {
    Prime(u64),
    Named(String),
}

/// An audit request as read from an input file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditInput {
    /// `point`, `vertical` or `global`.
    pub audit: String,
    #[serde(default)]
    pub p: Option<u64>,
    #[serde(rename = "N", default)]
    pub n: Option<u32>,
    pub f: Vec<AtomJson>,
    pub g: Vec<AtomJson>,
    /// Base of a global audit; defaults to `Q`.
    #[serde(default)]
    pub base: Option<BaseJson>,
    /// Point audit at `(p, T - center)` instead of `(p, T)`.
    #[serde(default)]
    pub center: Option<u64>,
    /// Digits a vertical audit must certify; defaults to `N`.
    #[serde(default)]
    pub target: Option<u32>,
    /// Label of a place to drop before folding; a negative control.
    #[serde(default)]
    pub omit: Option<String>,
}

impl AuditInput {
    pub fn parse(text: &str) -> Result<AuditInput> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("audit input: {e}")))
    }

    fn p_and_n(&self) -> Result<(u64, u32)> {
        match (self.p, self.n) {
            (Some(p), Some(n)) => Ok((p, n)),
            _ => Err(Error::InvalidInput(format!("{} audit needs p and N", self.audit))),
        }
    }

    pub fn run(&self) -> Result<AuditReport> {
        let f = function_from_json(&self.f, self.p)?;
        let g = function_from_json(&self.g, self.p)?;
        let report = match self.audit.as_str() {
            "point" => {
                let (p, n) = self.p_and_n()?;
                verify_point_reciprocity_at(&f, &g, p, n, self.center)?
            }
            "vertical" => {
                let (p, n) = self.p_and_n()?;
                verify_vertical_reciprocity(&f, &g, p, n, self.target.unwrap_or(n))?
            }
            "global" => {
                let base = match &self.base {
                    None => Base::Rational,
                    Some(BaseJson::Named(s)) if s == "Q" => Base::Rational,
                    Some(BaseJson::Prime(q)) => Base::Prime(*q),
                    Some(BaseJson::Named(s)) => return Err(Error::InvalidInput(format!("unknown base {s:?}"))),
                };
                verify_global_weil(&f, &g, base)?
            }
            other => return Err(Error::InvalidInput(format!("unknown audit kind {other:?}"))),
        };
        match &self.omit {
            Some(label) => report.without(label),
            None => Ok(report),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocalValueJson {
    Padic(SymbolValueJson),
    Rational(String),
    Residue(GrElemJson),
}

impl LocalValueJson {
    pub fn from_value(v: &LocalValue) -> Self {
        match v {
            LocalValue::PAdic(s) => LocalValueJson::Padic(SymbolValueJson::from_value(s)),
            LocalValue::Rational(r) => LocalValueJson::Rational(r.to_string()),
            LocalValue::Residue(a) => LocalValueJson::Residue(GrElemJson::from_elem(a)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceJson {
    pub kind: String,
    pub degree: usize,
    pub label: String,
    pub value: LocalValueJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsRowJson {
    pub place: String,
    pub values: Vec<String>,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub audit: String,
    pub p: Option<u64>,
    pub places: Vec<PlaceJson>,
    pub product: LocalValueJson,
    pub certified_prec: Option<u32>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub abs_table: Vec<AbsRowJson>,
}

fn place_kind_name(k: PlaceKind) -> &'static str {
    match k {
        PlaceKind::Vertical => "vertical",
        PlaceKind::Horizontal => "horizontal",
        PlaceKind::Point => "point",
        PlaceKind::Infinity => "infinity",
    }
}

impl ReportJson {
    pub fn from_report(r: &AuditReport) -> Self {
        let audit = match r.kind {
            AuditKind::Point => "point",
            AuditKind::Vertical => "vertical",
            AuditKind::Global => "global",
        };
        ReportJson {
            audit: audit.into(),
            p: r.p,
            places: r
                .entries
                .iter()
                .map(|e| PlaceJson {
                    kind: place_kind_name(e.place.kind).into(),
                    degree: e.place.degree,
                    label: e.place.label.clone(),
                    value: LocalValueJson::from_value(&e.value),
                    note: e.note.clone(),
                })
                .collect(),
            product: LocalValueJson::from_value(&r.product),
            certified_prec: r.certified_prec,
            pass: r.pass,
            abs_table: r
                .abs_table
                .iter()
                .map(|row| AbsRowJson {
                    place: row.place.clone(),
                    values: row.values.iter().map(|v| v.to_string()).collect(),
                    product: row.product.to_string(),
                })
                .collect(),
        }
    }
}

/// Pretty-printed JSON with a trailing newline. Field order is fixed by the types, so the
/// output depends only on the value.
pub fn to_canonical_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_round_trip() {
        let r = RingDesc::unramified(3, 2, 2).unwrap();
        let a = &GrElem::from_int(&r, 7) + &GrElem::x(&r);
        let j = GrElemJson::from_elem(&a);
        assert_eq!(j.coords, vec!["7", "1"]);
        let text = serde_json::to_string(&j).unwrap();
        let back: GrElemJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_elem().unwrap(), a);
    }

    #[test]
    fn negative_residues_are_canonical() {
        let r = RingDesc::prime(5, 2).unwrap();
        assert_eq!(GrElemJson::from_elem(&GrElem::from_int(&r, -1)).coords, vec!["24"]);
    }

    #[test]
    fn laurent_round_trip() {
        let r = RingDesc::prime(5, 2).unwrap();
        let f = LaurentUnit::from_ints(&r, 1, &[(-1, 5), (0, 1), (2, -3)]).unwrap();
        let j = LaurentJson::from_unit(&f);
        let g = j.to_unit(&r).unwrap();
        assert!(g.agrees_with(&f) && g.p_exp() == 1 && g.is_exact());
        let w = LaurentUnit::make(&r, 0, &[(0, GrElem::one(&r))], Some((0, 4))).unwrap();
        let back = LaurentJson::from_unit(&w).to_unit(&r).unwrap();
        assert_eq!(back.window(), (0, 4));
        assert!(!back.is_exact());
    }

    #[test]
    fn audit_input_fixture() {
        let text = r#"{"audit": "point", "p": 5, "N": 3,
            "f": [{"kind": "monomial", "exp": 1}],
            "g": [{"kind": "distinguished", "coeffs": ["-5", "1"], "exp": 1}]}"#;
        let input = AuditInput::parse(text).unwrap();
        let rep = input.run().unwrap();
        assert!(rep.pass);
        let json = to_canonical_string(&ReportJson::from_report(&rep));
        assert_eq!(json, to_canonical_string(&ReportJson::from_report(&input.run().unwrap())));
        let mut broken = input.clone();
        broken.omit = Some("(T - 5)".into());
        assert!(!broken.run().unwrap().pass);
    }

    #[test]
    fn atoms_round_trip() {
        let f = FactoredFunction::new(vec![
            (Atom::constant(BigRational::new(3.into(), 2.into())).unwrap(), 1),
            (Atom::Monomial, -2),
            (Atom::unit_poly(Poly::from_coeffs(vec![1.into(), 1.into()]), 5).unwrap(), 3),
        ]);
        let back = function_from_json(&function_to_json(&f), Some(5)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn rejects_bad_atoms() {
        let a = AtomJson { kind: "unit".into(), coeffs: vec!["5".into(), "1".into()], exp: 1 };
        assert!(a.to_atom(Some(5)).is_err());
        let a = AtomJson { kind: "wat".into(), coeffs: vec![], exp: 1 };
        assert!(a.to_atom(None).is_err());
        assert!(AuditInput::parse(r#"{"audit": "point", "f": [], "g": [], "extra": 1}"#).is_err());
    }
}
