//! Audit reports: per-place symbols folded in a canonical order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::arith::factor_integer;
use crate::coeff_ring::GrElem;
use crate::error::{Error, Result};
use crate::symbols::SymbolValue;

/// Kinds in canonical fold order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceKind {
    /// The prime `(p)`, i.e. the special fibre.
    Vertical,
    /// A distinguished prime of `Z_p[[T]]`.
    Horizontal,
    /// A finite closed point of a curve.
    Point,
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub kind: PlaceKind,
    pub degree: usize,
    /// Coefficients from the top down, compared by absolute value and then sign.
    pub key: Vec<BigRational>,
    pub label: String,
}

fn key_cmp(a: &[BigRational], b: &[BigRational]) -> Ordering {
    let weigh = |x: &BigRational| (x.abs(), x.is_negative());
    a.iter().map(weigh).cmp(b.iter().map(weigh))
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.kind, self.degree)
            .cmp(&(other.kind, other.degree))
            .then_with(|| key_cmp(&self.key, &other.key))
            .then_with(|| self.label.cmp(&other.label))
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A local symbol: `p`-adic, exactly rational, or in a finite field.
#[derive(Clone, Debug)]
pub enum LocalValue {
    PAdic(SymbolValue),
    Rational(BigRational),
    Residue(GrElem),
}

impl LocalValue {
    pub fn mul(&self, other: &LocalValue) -> Result<LocalValue> {
        Ok(match (self, other) {
            (LocalValue::PAdic(a), LocalValue::PAdic(b)) => LocalValue::PAdic(a.mul(b)?),
            (LocalValue::Rational(a), LocalValue::Rational(b)) => LocalValue::Rational(a * b),
            (LocalValue::Residue(a), LocalValue::Residue(b)) => LocalValue::Residue(a.try_mul(b)?),
            _ => return Err(Error::MixedRings),
        })
    }

    /// Identity of the same kind as `self`.
    pub fn one_like(&self) -> LocalValue {
        match self {
            LocalValue::PAdic(a) => LocalValue::PAdic(SymbolValue::one(a.ring())),
            LocalValue::Rational(_) => LocalValue::Rational(BigRational::one()),
            LocalValue::Residue(a) => LocalValue::Residue(GrElem::one(a.ring())),
        }
    }

    /// Exactly `1` for exact kinds; `1` to the certified precision for `p`-adic values.
    pub fn is_one(&self) -> bool {
        match self {
            LocalValue::PAdic(a) => a.is_one(),
            LocalValue::Rational(a) => a.is_one(),
            LocalValue::Residue(a) => a.is_one(),
        }
    }

    /// Exactly `1`, ignoring certified precision.
    pub fn is_exactly_one(&self) -> bool {
        match self {
            LocalValue::PAdic(a) => a.p_val == 0 && a.unit.is_one(),
            other => other.is_one(),
        }
    }
}

impl fmt::Display for LocalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalValue::PAdic(a) => write!(f, "{a}"),
            LocalValue::Rational(a) => write!(f, "{a}"),
            LocalValue::Residue(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlaceEntry {
    pub place: Place,
    pub value: LocalValue,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditKind {
    Point,
    Vertical,
    Global,
}

impl fmt::Display for AuditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditKind::Point => "point",
            AuditKind::Vertical => "vertical",
            AuditKind::Global => "global",
        })
    }
}

/// `|r_z|_v` for one place `v` of `Q` across all entries, and their product.
#[derive(Clone, Debug, PartialEq)]
pub struct AbsRow {
    /// A rational prime, or `∞`.
    pub place: String,
    pub values: Vec<BigRational>,
    pub product: BigRational,
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub kind: AuditKind,
    pub p: Option<u64>,
    pub entries: Vec<PlaceEntry>,
    pub product: LocalValue,
    /// Digits of the `p`-adic product that are certified; `None` for exact audits.
    pub certified_prec: Option<u32>,
    pub pass: bool,
    pub abs_table: Vec<AbsRow>,
}

impl AuditReport {
    /// Sort the entries canonically and fold them. `identity` fixes the value kind for an empty audit.
    pub(crate) fn assemble(
        kind: AuditKind,
        p: Option<u64>,
        mut entries: Vec<PlaceEntry>,
        identity: LocalValue,
        target_prec: Option<u32>,
    ) -> Result<AuditReport> {
        entries.sort_by(|a, b| a.place.cmp(&b.place));
        let mut product = identity;
        for e in &entries {
            product = product.mul(&e.value)?;
        }
        let certified_prec = match (&product, target_prec) {
            (LocalValue::PAdic(v), Some(n)) => {
                let c = v.prec.min(n);
                product = LocalValue::PAdic(v.with_prec(c));
                Some(c)
            }
            (LocalValue::PAdic(v), None) => Some(v.prec),
            _ => None,
        };
        let abs_table = match &product {
            LocalValue::Rational(_) => abs_table(&entries),
            _ => Vec::new(),
        };
        let table_ok = abs_table.iter().all(|r| r.product.is_one()) && columns_multiply_to_one(&abs_table);
        let pass = product.is_one() && certified_prec.is_none_or(|c| c >= 1) && table_ok;
        Ok(AuditReport { kind, p, entries, product, certified_prec, pass, abs_table })
    }

    pub fn entry(&self, label: &str) -> Option<&PlaceEntry> {
        self.entries.iter().find(|e| e.place.label == label)
    }

    /// The same audit with one place dropped; used as a negative control.
    pub fn without(&self, label: &str) -> Result<AuditReport> {
        if self.entry(label).is_none() {
            return Err(Error::InvalidInput(format!("no place labelled {label}")));
        }
        let entries = self.entries.iter().filter(|e| e.place.label != label).cloned().collect();
        let target = self.certified_prec;
        AuditReport::assemble(self.kind, self.p, entries, self.product.one_like(), target)
    }
}

fn columns_multiply_to_one(table: &[AbsRow]) -> bool {
    let Some(first) = table.first() else {
        return true;
    };
    (0..first.values.len()).all(|j| table.iter().map(|r| &r.values[j]).product::<BigRational>().is_one())
}

/// Rows for `∞` and every prime dividing some rational entry.
fn abs_table(entries: &[PlaceEntry]) -> Vec<AbsRow> {
    let values: Vec<BigRational> = entries
        .iter()
        .map(|e| match &e.value {
            LocalValue::Rational(r) => r.clone(),
            _ => BigRational::one(),
        })
        .collect();
    let mut primes: Vec<BigInt> = values
        .iter()
        .flat_map(|r| factor_integer(r.numer()).into_iter().chain(factor_integer(r.denom())))
        .map(|(q, _)| BigInt::from(q))
        .collect();
    primes.sort();
    primes.dedup();
    let mut rows = Vec::with_capacity(primes.len() + 1);
    for q in primes {
        let vals: Vec<BigRational> = values.iter().map(|r| abs_at(r, &q)).collect();
        let product = vals.iter().product();
        rows.push(AbsRow { place: q.to_string(), values: vals, product });
    }
    let vals: Vec<BigRational> = values.iter().map(|r| r.abs()).collect();
    let product = vals.iter().product();
    rows.push(AbsRow { place: "∞".into(), values: vals, product });
    rows
}

/// `|r|_q = q^{-v_q(r)}`.
fn abs_at(r: &BigRational, q: &BigInt) -> BigRational {
    let val = |x: &BigInt| {
        let mut x = x.clone();
        let mut v = 0i64;
        while (&x % q) == BigInt::from(0) {
            x /= q;
            v += 1;
        }
        v
    };
    let v = val(r.numer()) - val(r.denom());
    let qr = BigRational::from_integer(q.clone());
    crate::surface::function::pow_rat(&qr, -v)
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} audit{}", self.kind, self.p.map(|p| format!(" at p = {p}")).unwrap_or_default())?;
        let width = self.entries.iter().map(|e| e.place.label.chars().count()).max().unwrap_or(0);
        for e in &self.entries {
            let pad = width - e.place.label.chars().count();
            write!(f, "  {}{}  {}", e.place.label, " ".repeat(pad), e.value)?;
            if let Some(n) = &e.note {
                write!(f, "  [{n}]")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "  product: {}", self.product)?;
        if let Some(c) = self.certified_prec {
            writeln!(f, "  certified digits: {c}")?;
        }
        if !self.abs_table.is_empty() {
            writeln!(f, "  absolute values (rows: places of Q, columns: places above):")?;
            for r in &self.abs_table {
                let cells: Vec<String> = r.values.iter().map(|v| v.to_string()).collect();
                writeln!(f, "    |·|_{}: {}  product {}", r.place, cells.join(", "), r.product)?;
            }
        }
        write!(f, "  {}", if self.pass { "PASS" } else { "FAIL" })
    }
}
