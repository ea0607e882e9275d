//! Reciprocity audits on `Spec Z_p[[T]]` and on `P¹` over `Z_p`.

use num_rational::BigRational;
use rayon::prelude::*;

use super::function::{primitive_part, rat_poly_to_gr};
use super::local::{local_symbol, unit_content_atoms, Curve};
use super::point::ClosedPoint;
use super::report::{AuditKind, AuditReport, LocalValue, Place, PlaceEntry, PlaceKind};
use super::FactoredFunction;
use crate::coeff_ring::finite_field::{factor, monic_irreducibles, poly_order};
use crate::coeff_ring::RingDesc;
use crate::error::Result;
use crate::surface::function::int_to_rat;
use crate::symbols::SymbolValue;
use crate::weierstrass::tame::PointModel;
use crate::GrPoly;

fn fiber_place() -> Place {
    Place { kind: PlaceKind::Vertical, degree: 0, key: Vec::new(), label: "(p)".into() }
}

/// Every height-one prime of `Z_p[[T]]` where `{f, g}` can be nontrivial, with its symbol.
///
/// With `center = Some(c)` the audit runs at the closed point `(p, T - c)` instead of
/// `(p, T)`, by translating both functions.
pub fn verify_point_reciprocity_at(
    f: &FactoredFunction,
    g: &FactoredFunction,
    p: u64,
    n: u32,
    center: Option<u64>,
) -> Result<AuditReport> {
    f.validate(p)?;
    g.validate(p)?;
    let (f, g) = match center {
        Some(c) if c != 0 => {
            let c = BigRational::from_integer(c.into());
            (f.translate(&c), g.translate(&c))
        }
        _ => (f.clone(), g.clone()),
    };
    let model = PointModel::new(&f, &g, p, &[]);
    let places = model.places();
    let mut entries: Vec<PlaceEntry> = places
        .par_iter()
        .map(|pl| -> Result<PlaceEntry> {
            let key = match &pl.exact {
                Some(pi) => pi.coeffs().iter().rev().cloned().collect(),
                None => int_to_rat(&model.basis[pl.index]).coeffs().iter().rev().cloned().collect(),
            };
            Ok(PlaceEntry {
                place: Place { kind: PlaceKind::Horizontal, degree: pl.degree, key, label: pl.label.clone() },
                value: LocalValue::PAdic(model.tame(pl, n)?),
                note: pl.note.clone(),
            })
        })
        .collect::<Result<_>>()?;
    entries.push(PlaceEntry { place: fiber_place(), value: LocalValue::PAdic(model.kato_at_p(n)?), note: None });
    let one = LocalValue::PAdic(SymbolValue::one(&RingDesc::prime(p, n)?));
    AuditReport::assemble(AuditKind::Point, Some(p), entries, one, Some(n))
}

/// Point reciprocity at the closed point `(p, T)`.
pub fn verify_point_reciprocity(f: &FactoredFunction, g: &FactoredFunction, p: u64, n: u32) -> Result<AuditReport> {
    verify_point_reciprocity_at(f, g, p, n, None)
}

/// Closed points of `P¹_{F_p}` where some atom of `f` or `g` has a zero or pole.
pub fn contributing_points(f: &FactoredFunction, g: &FactoredFunction, p: u64) -> Result<Vec<ClosedPoint>> {
    let res = RingDesc::prime(p, 1)?;
    let mut factors: Vec<GrPoly> = Vec::new();
    let mut any_nonconstant = false;
    for (poly, _) in f.polys().into_iter().chain(g.polys()) {
        if poly.is_constant() {
            continue;
        }
        let (_, prim) = primitive_part(&poly);
        let bar = rat_poly_to_gr(&res, &int_to_rat(&prim))?;
        any_nonconstant = true;
        factors.extend(factor(&bar).1.into_iter().map(|(h, _)| h));
    }
    factors.sort_by(poly_order);
    factors.dedup();
    let mut points: Vec<ClosedPoint> = factors.into_iter().map(ClosedPoint::FiberPoint).collect();
    if any_nonconstant {
        points.push(ClosedPoint::Infinity);
    }
    Ok(points)
}

fn point_place(x: &ClosedPoint) -> Place {
    match x {
        ClosedPoint::FiberPoint(h) => Place {
            kind: PlaceKind::Point,
            degree: h.deg() as usize,
            key: h.coeffs().iter().rev().map(|c| BigRational::from_integer(c.coords()[0].into())).collect(),
            label: x.to_string(),
        },
        _ => Place { kind: PlaceKind::Infinity, degree: 1, key: Vec::new(), label: x.to_string() },
    }
}

/// The product over the special fibre of `P¹_{Z_p}` of `{f, g}_{x, (p)}`, checked modulo `p^target`.
///
/// Points outside [`contributing_points`] give `1` exactly (see [`off_support_symbols`]).
pub fn verify_vertical_reciprocity(
    f: &FactoredFunction,
    g: &FactoredFunction,
    p: u64,
    n: u32,
    target: u32,
) -> Result<AuditReport> {
    f.validate(p)?;
    g.validate(p)?;
    unit_content_atoms(f, p)?;
    unit_content_atoms(g, p)?;
    let points = contributing_points(f, g, p)?;
    let entries: Vec<PlaceEntry> = points
        .par_iter()
        .map(|x| -> Result<PlaceEntry> {
            let v = local_symbol(f, g, x, &Curve::Vertical, p, n)?;
            Ok(PlaceEntry { place: point_place(x), value: LocalValue::PAdic(v), note: None })
        })
        .collect::<Result<_>>()?;
    let one = LocalValue::PAdic(SymbolValue::one(&RingDesc::prime(p, n)?));
    AuditReport::assemble(AuditKind::Vertical, Some(p), entries, one, Some(target.min(n)))
}

/// Symbols at the first `count` fibre points of degree at most 3 outside the support.
pub fn off_support_symbols(
    f: &FactoredFunction,
    g: &FactoredFunction,
    p: u64,
    n: u32,
    count: usize,
) -> Result<Vec<(ClosedPoint, SymbolValue)>> {
    let support = contributing_points(f, g, p)?;
    let res = RingDesc::prime(p, 1)?;
    let mut out = Vec::with_capacity(count);
    for d in 1..=3 {
        for h in monic_irreducibles(&res, d) {
            if out.len() == count {
                return Ok(out);
            }
            let x = ClosedPoint::FiberPoint(h);
            if support.contains(&x) {
                continue;
            }
            let v = local_symbol(f, g, &x, &Curve::Vertical, p, n)?;
            out.push((x, v));
        }
    }
    Ok(out)
}
