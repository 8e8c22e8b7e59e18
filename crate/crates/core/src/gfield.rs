//! Finite fields `F_{p^r}` presented as `Z_p[z]` modulo a monic irreducible
//! polynomial, with products computed as remainders of polynomial long
//! division. Also: full operation tables on canonical element labels and a
//! field-axiom checker for abstract tables.

use crate::polyring::{self, is_irreducible, poly_divmod, poly_op, PolyOp, PrimePoly};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

/// Element arithmetic cap; full tables are capped separately.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;
pub const MAX_TABLE_ORDER: u64 = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is not monic")]
    NotMonic,
    #[error("modulus polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("field order {0} exceeds the cap {1}")]
    OrderTooLarge(u64, u64),
    #[error("elements belong to different fields")]
    SpecMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("the zero element has no multiplicative order")]
    ZeroOrder,
    #[error("polynomial error: {0}")]
    Poly(#[from] polyring::PolyError),
}

/// A finite field `F_{p^r} = Z_p[z] / <modulus>`.
///
/// For `r = 1` the modulus is always `z`, so `Z_p` and `F_p` share one code
/// path; any other monic degree-1 modulus is normalized to `z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    char_p: u64,
    modulus: PrimePoly,
    order: u64,
}

pub type Field = Arc<FieldSpec>;

/// An element of a field, stored as its reduced polynomial representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElem {
    spec: Field,
    rep: PrimePoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

/// Validates and builds a field `Z_p[z]/<f>`.
pub fn make_field(p: u64, f: &PrimePoly) -> Result<Field, FieldError> {
    if !polyring::is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if f.char_p() != p {
        return Err(FieldError::Poly(polyring::PolyError::CharMismatch(
            f.char_p(),
            p,
        )));
    }
    if !f.is_monic() {
        return Err(FieldError::NotMonic);
    }
    if !is_irreducible(f)? {
        return Err(FieldError::NotIrreducible(f.to_human()));
    }
    let r = f.degree().unwrap() as u32;
    let modulus = if r == 1 {
        PrimePoly::var(p)?
    } else {
        f.clone()
    };
    let order = (p as u128).pow(r);
    if order > MAX_FIELD_ORDER as u128 {
        return Err(FieldError::OrderTooLarge(
            order.min(u64::MAX as u128) as u64,
            MAX_FIELD_ORDER,
        ));
    }
    Ok(Arc::new(FieldSpec {
        char_p: p,
        modulus,
        order: order as u64,
    }))
}

/// A prime field `F_p` with modulus `z`.
pub fn prime_field(p: u64) -> Result<Field, FieldError> {
    if !polyring::is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    make_field(p, &PrimePoly::var(p)?)
}

impl FieldSpec {
    pub fn char_p(&self) -> u64 {
        self.char_p
    }

    pub fn modulus(&self) -> &PrimePoly {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn extension_degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }
}

/// Element construction and canonical indexing.
pub trait FieldOps {
    fn elem(&self, rep: &PrimePoly) -> Result<FieldElem, FieldError>;
    fn elem_from_index(&self, index: u64) -> FieldElem;
    fn zero(&self) -> FieldElem;
    fn one(&self) -> FieldElem;
    fn elements(&self) -> Vec<FieldElem>;
}

impl FieldOps for Field {
    /// Reduces an arbitrary polynomial into the field.
    fn elem(&self, rep: &PrimePoly) -> Result<FieldElem, FieldError> {
        if rep.char_p() != self.char_p {
            return Err(FieldError::Poly(polyring::PolyError::CharMismatch(
                rep.char_p(),
                self.char_p,
            )));
        }
        let (_, r) = poly_divmod(rep, &self.modulus)?;
        Ok(FieldElem {
            spec: self.clone(),
            rep: r,
        })
    }

    /// The element whose coefficient sequence reads `index` in base `p`
    /// (ascending degree). Index 0 is 0, index 1 is 1.
    fn elem_from_index(&self, index: u64) -> FieldElem {
        assert!(index < self.order);
        let p = self.char_p;
        let mut coeffs = Vec::new();
        let mut k = index;
        while k > 0 {
            coeffs.push(k % p);
            k /= p;
        }
        FieldElem {
            spec: self.clone(),
            rep: PrimePoly::new(p, coeffs).expect("p prime"),
        }
    }

    fn zero(&self) -> FieldElem {
        self.elem_from_index(0)
    }

    fn one(&self) -> FieldElem {
        self.elem_from_index(1)
    }

    /// All elements in canonical order (coefficient sequence read as a
    /// base-p integer, ascending).
    fn elements(&self) -> Vec<FieldElem> {
        (0..self.order).map(|i| self.elem_from_index(i)).collect()
    }
}

impl FieldElem {
    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn rep(&self) -> &PrimePoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Canonical index of the element in its field's element order.
    pub fn index(&self) -> u64 {
        let p = self.spec.char_p;
        self.rep
            .coeffs()
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c)
    }

    fn check_same(&self, other: &FieldElem) -> Result<(), FieldError> {
        if self.spec != other.spec {
            return Err(FieldError::SpecMismatch);
        }
        Ok(())
    }
}

impl std::fmt::Display for FieldElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.rep.to_human())
    }
}

/// Polynomial operation followed by reduction modulo the field modulus.
pub fn elem_op(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem, FieldError> {
    a.check_same(b)?;
    let raw = match op {
        FieldOp::Add => poly_op(&a.rep, &b.rep, PolyOp::Add)?,
        FieldOp::Sub => poly_op(&a.rep, &b.rep, PolyOp::Sub)?,
        FieldOp::Mul => poly_op(&a.rep, &b.rep, PolyOp::Mul)?,
    };
    let (_, rem) = poly_divmod(&raw, &a.spec.modulus)?;
    Ok(FieldElem {
        spec: a.spec.clone(),
        rep: rem,
    })
}

/// Multiplicative inverse, found by scanning all q elements.
pub fn elem_inverse(a: &FieldElem) -> Result<FieldElem, FieldError> {
    if a.is_zero() {
        return Err(FieldError::ZeroInverse);
    }
    let one = a.spec.one();
    for i in 1..a.spec.order {
        let b = a.spec.elem_from_index(i);
        if elem_op(a, &b, FieldOp::Mul)? == one {
            return Ok(b);
        }
    }
    unreachable!("every nonzero element of a field has an inverse")
}

/// Smallest `k >= 1` with `k * 1 = 0`, computed by actually adding 1
/// repeatedly, then asserted equal to the characteristic prime.
pub fn characteristic(spec: &Field) -> u64 {
    let one = spec.one();
    let mut acc = spec.zero();
    for k in 1.. {
        acc = elem_op(&acc, &one, FieldOp::Add).expect("same field");
        if acc.is_zero() {
            assert_eq!(k, spec.char_p());
            return k;
        }
    }
    unreachable!()
}

/// Smallest `k >= 1` with `a^k = 1`; divides `q - 1`.
pub fn multiplicative_order(a: &FieldElem) -> Result<u64, FieldError> {
    if a.is_zero() {
        return Err(FieldError::ZeroOrder);
    }
    let one = a.spec.one();
    let mut acc = a.clone();
    for k in 1.. {
        if acc == one {
            return Ok(k);
        }
        acc = elem_op(&acc, a, FieldOp::Mul)?;
    }
    unreachable!()
}

/// Abstract addition and multiplication tables on labels `0..n`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpTablePair {
    pub size: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("tables must be square of the stated size")]
    NotSquare,
    #[error("table entry out of range")]
    EntryOutOfRange,
    #[error("table size must be at least 2")]
    TooSmall,
    #[error("field order {0} exceeds the table cap {MAX_TABLE_ORDER}")]
    OrderTooLarge(u64),
}

impl OpTablePair {
    pub fn check_shape(&self) -> Result<(), TableError> {
        if self.size < 2 {
            return Err(TableError::TooSmall);
        }
        for t in [&self.add, &self.mul] {
            if t.len() != self.size || t.iter().any(|row| row.len() != self.size) {
                return Err(TableError::NotSquare);
            }
            if t.iter().flatten().any(|&e| e >= self.size) {
                return Err(TableError::EntryOutOfRange);
            }
        }
        Ok(())
    }
}

/// Full operation tables over the canonical element order (0 at label 0,
/// 1 at label 1).
pub fn build_op_tables(spec: &Field) -> Result<OpTablePair, TableError> {
    if spec.order() > MAX_TABLE_ORDER {
        return Err(TableError::OrderTooLarge(spec.order()));
    }
    let n = spec.order() as usize;
    let elems = spec.elements();
    let table = |op: FieldOp| -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        elem_op(&elems[i], &elems[j], op).expect("same field").index() as usize
                    })
                    .collect()
            })
            .collect()
    };
    Ok(OpTablePair {
        size: n,
        add: table(FieldOp::Add),
        mul: table(FieldOp::Mul),
    })
}

/// A field-axiom violation with an explicit witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomViolation {
    AddNotCommutative { a: usize, b: usize },
    MulNotCommutative { a: usize, b: usize },
    AddNotAssociative { a: usize, b: usize, c: usize },
    MulNotAssociative { a: usize, b: usize, c: usize },
    ZeroNotAdditiveIdentity { a: usize },
    OneNotMultiplicativeIdentity { a: usize },
    NoAdditiveInverse { a: usize },
    NoMultiplicativeInverse { a: usize },
    NotDistributive { a: usize, b: usize, c: usize },
    ZeroEqualsOne,
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use AxiomViolation::*;
        match self {
            AddNotCommutative { a, b } => write!(f, "{a}+{b} != {b}+{a}"),
            MulNotCommutative { a, b } => write!(f, "{a}*{b} != {b}*{a}"),
            AddNotAssociative { a, b, c } => write!(f, "({a}+{b})+{c} != {a}+({b}+{c})"),
            MulNotAssociative { a, b, c } => write!(f, "({a}*{b})*{c} != {a}*({b}*{c})"),
            ZeroNotAdditiveIdentity { a } => write!(f, "0+{a} != {a}"),
            OneNotMultiplicativeIdentity { a } => write!(f, "1*{a} != {a}"),
            NoAdditiveInverse { a } => write!(f, "label {a} has no additive inverse"),
            NoMultiplicativeInverse { a } => {
                write!(f, "label {a} has no multiplicative inverse")
            }
            NotDistributive { a, b, c } => {
                write!(f, "{a}*({b}+{c}) != {a}*{b}+{a}*{c}")
            }
            ZeroEqualsOne => write!(f, "labels 0 and 1 coincide"),
        }
    }
}

/// Checks every field axiom on an abstract table pair, with labels 0 and 1
/// as the identities. Empty result iff the tables present a field.
pub fn verify_field_axioms(t: &OpTablePair) -> Result<Vec<AxiomViolation>, TableError> {
    t.check_shape()?;
    let n = t.size;
    let mut v = Vec::new();
    use AxiomViolation::*;

    for a in 0..n {
        if t.add[0][a] != a || t.add[a][0] != a {
            v.push(ZeroNotAdditiveIdentity { a });
        }
        if t.mul[1][a] != a || t.mul[a][1] != a {
            v.push(OneNotMultiplicativeIdentity { a });
        }
        if !(0..n).any(|b| t.add[a][b] == 0) {
            v.push(NoAdditiveInverse { a });
        }
        if a != 0 && !(0..n).any(|b| t.mul[a][b] == 1) {
            v.push(NoMultiplicativeInverse { a });
        }
        for b in a + 1..n {
            if t.add[a][b] != t.add[b][a] {
                v.push(AddNotCommutative { a, b });
            }
            if t.mul[a][b] != t.mul[b][a] {
                v.push(MulNotCommutative { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t.add[t.add[a][b]][c] != t.add[a][t.add[b][c]] {
                    v.push(AddNotAssociative { a, b, c });
                }
                if t.mul[t.mul[a][b]][c] != t.mul[a][t.mul[b][c]] {
                    v.push(MulNotAssociative { a, b, c });
                }
                if t.mul[a][t.add[b][c]] != t.add[t.mul[a][b]][t.mul[a][c]] {
                    v.push(NotDistributive { a, b, c });
                }
            }
        }
    }
    // 0 != 1 holds by labeling whenever n >= 2; kept for malformed callers
    if n < 2 {
        v.push(ZeroEqualsOne);
    }
    Ok(v)
}

/// Parses the CLI field descriptor `p=2,f=[1,1,1]`.
pub fn parse_field_descriptor(s: &str) -> Result<Field, FieldError> {
    let parse_err = |m: &str| FieldError::Poly(polyring::PolyError::Parse(m.to_string()));
    let s = s.trim();
    let rest = s
        .strip_prefix("p=")
        .ok_or_else(|| parse_err("descriptor must start with p="))?;
    let comma = rest
        .find(',')
        .ok_or_else(|| parse_err("descriptor must contain ,f="))?;
    let p: u64 = rest[..comma]
        .trim()
        .parse()
        .map_err(|_| parse_err("bad characteristic"))?;
    let f_part = rest[comma + 1..]
        .trim()
        .strip_prefix("f=")
        .ok_or_else(|| parse_err("descriptor must contain f="))?;
    let f = PrimePoly::parse(p, f_part)?;
    make_field(p, &f)
}
