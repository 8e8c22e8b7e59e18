//! Polynomials over `Z_p` with `p` prime: arithmetic, long division, root
//! finding, irreducibility by exhaustive trial division, factorization, and
//! enumeration of monic irreducibles.
//!
//! Coefficients are stored in ascending degree. The zero polynomial is the
//! empty coefficient sequence; its degree is `None`.

use serde::Serialize;
use thiserror::Error;

/// Hard limits keeping the exhaustive searches under a second.
pub const MAX_CHAR: u64 = 13;
pub const MAX_ENUM_DEGREE: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic mismatch: {0} vs {1}")]
    CharMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("a constant polynomial is not allowed here")]
    ConstantPolynomial,
    #[error("limits exceeded: p <= {MAX_CHAR}, degree <= {MAX_ENUM_DEGREE} required")]
    LimitExceeded,
    #[error("could not parse polynomial: {0}")]
    Parse(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A polynomial in `Z_p[z]`, coefficients ascending, normalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimePoly {
    char_p: u64,
    coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl PrimePoly {
    /// Builds a polynomial from ascending coefficients, reducing mod `p` and
    /// trimming trailing zeros.
    pub fn new(char_p: u64, coeffs: impl IntoIterator<Item = u64>) -> Result<Self, PolyError> {
        if !is_prime(char_p) {
            return Err(PolyError::NotPrime(char_p));
        }
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % char_p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(PrimePoly { char_p, coeffs })
    }

    pub fn zero(char_p: u64) -> Self {
        PrimePoly {
            char_p,
            coeffs: vec![],
        }
    }

    pub fn one(char_p: u64) -> Self {
        PrimePoly {
            char_p,
            coeffs: vec![1],
        }
    }

    pub fn constant(char_p: u64, c: u64) -> Result<Self, PolyError> {
        Self::new(char_p, [c])
    }

    /// The monomial `z`.
    pub fn var(char_p: u64) -> Result<Self, PolyError> {
        Self::new(char_p, [0, 1])
    }

    pub fn char_p(&self) -> u64 {
        self.char_p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.char_p as u128;
        let x = (x % self.char_p) as u128;
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as u128) % p;
        }
        acc as u64
    }

    fn check_same(&self, other: &PrimePoly) -> Result<(), PolyError> {
        if self.char_p != other.char_p {
            return Err(PolyError::CharMismatch(self.char_p, other.char_p));
        }
        Ok(())
    }

    fn from_raw(char_p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PrimePoly { char_p, coeffs }
    }

    /// Human form, ascending: `1+z+z^2`. The zero polynomial prints as `0`.
    pub fn to_human(&self) -> String {
        self.to_human_var('z')
    }

    pub fn to_human_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 if c == 1 => format!("{var}"),
                1 => format!("{c}{var}"),
                _ if c == 1 => format!("{var}^{i}"),
                _ => format!("{c}{var}^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }

    /// Parses either the list form `[1,1,1]` (ascending coefficients) or the
    /// human form `1+z+z^2` (also accepting `x` as the variable and `*`).
    pub fn parse(char_p: u64, s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let inner = inner.trim();
            if inner.is_empty() {
                return PrimePoly::new(char_p, []);
            }
            let coeffs: Result<Vec<u64>, _> = inner
                .split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect();
            let coeffs = coeffs.map_err(|e| PolyError::Parse(format!("{s}: {e}")))?;
            return PrimePoly::new(char_p, coeffs);
        }
        Self::parse_human(char_p, s)
    }

    fn parse_human(char_p: u64, s: &str) -> Result<Self, PolyError> {
        if !is_prime(char_p) {
            return Err(PolyError::NotPrime(char_p));
        }
        let bad = || PolyError::Parse(s.to_string());
        let mut coeffs: Vec<u64> = Vec::new();
        for term in s.split('+') {
            let term: String = term.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
            if term.is_empty() {
                return Err(bad());
            }
            let (coeff_str, rest) = match term.find(|c: char| c == 'z' || c == 'x') {
                Some(i) => (&term[..i], &term[i + 1..]),
                None => (term.as_str(), ""),
            };
            let has_var = term.contains('z') || term.contains('x');
            let coeff: u64 = if coeff_str.is_empty() {
                if has_var {
                    1
                } else {
                    return Err(bad());
                }
            } else {
                coeff_str.parse().map_err(|_| bad())?
            };
            let exp: usize = if !has_var {
                0
            } else if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = (coeffs[exp] + coeff) % char_p;
        }
        Ok(Self::from_raw(char_p, coeffs))
    }
}

impl std::fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_human())
    }
}

/// Exact coefficient arithmetic modulo `p`, result normalized.
pub fn poly_op(f: &PrimePoly, g: &PrimePoly, op: PolyOp) -> Result<PrimePoly, PolyError> {
    f.check_same(g)?;
    let p = f.char_p;
    let out = match op {
        PolyOp::Add | PolyOp::Sub => {
            let len = f.coeffs.len().max(g.coeffs.len());
            let mut coeffs = vec![0u64; len];
            for (i, c) in coeffs.iter_mut().enumerate() {
                let a = f.coeffs.get(i).copied().unwrap_or(0);
                let b = g.coeffs.get(i).copied().unwrap_or(0);
                *c = match op {
                    PolyOp::Add => (a + b) % p,
                    _ => (a + p - b) % p,
                };
            }
            coeffs
        }
        PolyOp::Mul => {
            if f.is_zero() || g.is_zero() {
                vec![]
            } else {
                let mut coeffs = vec![0u64; f.coeffs.len() + g.coeffs.len() - 1];
                for (i, &a) in f.coeffs.iter().enumerate() {
                    for (j, &b) in g.coeffs.iter().enumerate() {
                        coeffs[i + j] = ((coeffs[i + j] as u128 + a as u128 * b as u128)
                            % p as u128) as u64;
                    }
                }
                coeffs
            }
        }
    };
    Ok(PrimePoly::from_raw(p, out))
}

/// Long division: `f = q*g + r` with `deg r < deg g`.
pub fn poly_divmod(f: &PrimePoly, g: &PrimePoly) -> Result<(PrimePoly, PrimePoly), PolyError> {
    f.check_same(g)?;
    if g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let p = f.char_p;
    let dg = g.degree().unwrap();
    let lead_inv = crate::modarith::mod_inverse(
        crate::modarith::Residue::new(g.leading_coeff(), p).expect("p >= 2"),
    )
    .expect("leading coefficient is a unit mod a prime")
    .value;

    let mut rem = f.coeffs.clone();
    let mut quot = vec![0u64; f.coeffs.len().saturating_sub(dg)];
    while rem.len() > dg {
        let shift = rem.len() - 1 - dg;
        let factor = (*rem.last().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
        if factor != 0 {
            quot[shift] = factor;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                let sub = (gc as u128 * factor as u128 % p as u128) as u64;
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
        }
        debug_assert_eq!(*rem.last().unwrap(), 0);
        rem.pop();
    }
    Ok((PrimePoly::from_raw(p, quot), PrimePoly::from_raw(p, rem)))
}

/// All roots of `f` in `Z_p`, ascending, by evaluating at every residue.
pub fn poly_roots(f: &PrimePoly) -> Result<Vec<u64>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok((0..f.char_p).filter(|&a| f.eval(a) == 0).collect())
}

/// Iterator over all monic polynomials of degree `d` over `Z_p`, in
/// lexicographic order of the ascending coefficient sequence.
fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = PrimePoly> {
    let total = (p as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        // lexicographic on (c_0, ..., c_{d-1}): c_0 is the most significant digit
        for i in (0..d).rev() {
            coeffs[i] = (idx % p as u128) as u64;
            idx /= p as u128;
        }
        PrimePoly {
            char_p: p,
            coeffs,
        }
    })
}

/// True iff `f` has no monic divisor of degree in `[1, deg f / 2]`, decided
/// by exhaustive trial division.
pub fn is_irreducible(f: &PrimePoly) -> Result<bool, PolyError> {
    match f.degree() {
        None => Err(PolyError::ZeroPolynomial),
        Some(0) => Err(PolyError::ConstantPolynomial),
        Some(1) => Ok(true),
        Some(d) => {
            for e in 1..=d / 2 {
                for g in monic_polys(f.char_p, e) {
                    let (_, r) = poly_divmod(f, &g)?;
                    if r.is_zero() {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Monic irreducible factors (sorted, with multiplicity) and the unit
/// leading coefficient. The product of the factors times the unit is `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<PrimePoly>,
}

/// Factors `f` by recursive exhaustive trial division. Limited to
/// `p <= 13`, `deg f <= 8`.
pub fn factor_poly(f: &PrimePoly) -> Result<Factorization, PolyError> {
    let d = match f.degree() {
        None => return Err(PolyError::ZeroPolynomial),
        Some(0) => return Err(PolyError::ConstantPolynomial),
        Some(d) => d,
    };
    if f.char_p > MAX_CHAR || d > MAX_ENUM_DEGREE {
        return Err(PolyError::LimitExceeded);
    }
    let unit = f.leading_coeff();
    let unit_inv = crate::modarith::mod_inverse(
        crate::modarith::Residue::new(unit, f.char_p).expect("p >= 2"),
    )
    .expect("unit mod prime")
    .value;
    let monic = poly_op(f, &PrimePoly::constant(f.char_p, unit_inv)?, PolyOp::Mul)?;

    let mut factors = Vec::new();
    let mut rest = monic;
    'outer: while rest.degree() > Some(0) {
        let dr = rest.degree().unwrap();
        for e in 1..=dr / 2 {
            for g in monic_polys(rest.char_p, e) {
                let (q, r) = poly_divmod(&rest, &g)?;
                if r.is_zero() {
                    factors.push(g);
                    rest = q;
                    continue 'outer;
                }
            }
        }
        // no proper divisor: rest itself is irreducible
        factors.push(rest.clone());
        break;
    }
    factors.sort_by(|a, b| (a.coeffs.len(), &a.coeffs).cmp(&(b.coeffs.len(), &b.coeffs)));
    Ok(Factorization { unit, factors })
}

/// All monic irreducible polynomials of degree `d` over `Z_p`, in
/// lexicographic coefficient order. Limited to `p <= 13`, `d <= 8`.
pub fn monic_irreducibles(p: u64, d: usize) -> Result<Vec<PrimePoly>, PolyError> {
    if !is_prime(p) {
        return Err(PolyError::NotPrime(p));
    }
    if p > MAX_CHAR || d == 0 || d > MAX_ENUM_DEGREE {
        return Err(PolyError::LimitExceeded);
    }
    let mut out = Vec::new();
    for f in monic_polys(p, d) {
        if is_irreducible(&f)? {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u64, coeffs: &[u64]) -> PrimePoly {
        PrimePoly::new(p, coeffs.iter().copied()).unwrap()
    }

    #[test]
    fn normalization_and_degree() {
        assert_eq!(pp(5, &[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert_eq!(pp(5, &[]).degree(), None);
        assert_eq!(pp(5, &[7]).coeffs(), &[2]);
        assert!(PrimePoly::new(6, [1]).is_err());
    }

    #[test]
    fn poly_op_examples() {
        // (z+1)(z+1) = z^2+1 over Z_2
        let z1 = pp(2, &[1, 1]);
        assert_eq!(poly_op(&z1, &z1, PolyOp::Mul).unwrap(), pp(2, &[1, 0, 1]));
        // f + 0 = f
        let f = pp(7, &[3, 0, 2]);
        assert_eq!(poly_op(&f, &PrimePoly::zero(7), PolyOp::Add).unwrap(), f);
        // (x+1)(x+4) = x^2+4 over Z_5
        assert_eq!(
            poly_op(&pp(5, &[1, 1]), &pp(5, &[4, 1]), PolyOp::Mul).unwrap(),
            pp(5, &[4, 0, 1])
        );
        assert!(poly_op(&pp(2, &[1]), &pp(3, &[1]), PolyOp::Add).is_err());
    }

    #[test]
    fn divmod_examples() {
        // z^2+1 = 1*(z^2+z+1) + z over Z_2
        let (q, r) = poly_divmod(&pp(2, &[1, 0, 1]), &pp(2, &[1, 1, 1])).unwrap();
        assert_eq!(q, pp(2, &[1]));
        assert_eq!(r, pp(2, &[0, 1]));
        // f / f = (1, 0)
        let f = pp(5, &[2, 3, 1]);
        let (q, r) = poly_divmod(&f, &f).unwrap();
        assert_eq!(q, PrimePoly::one(5));
        assert!(r.is_zero());
        // x^3 = x*(x^2+3) + 2x over Z_5
        let (q, r) = poly_divmod(&pp(5, &[0, 0, 0, 1]), &pp(5, &[3, 0, 1])).unwrap();
        assert_eq!(q, pp(5, &[0, 1]));
        assert_eq!(r, pp(5, &[0, 2]));
        assert!(poly_divmod(&f, &PrimePoly::zero(5)).is_err());
    }

    #[test]
    fn roots_examples() {
        assert_eq!(poly_roots(&pp(5, &[4, 0, 1, 0, 1])).unwrap(), Vec::<u64>::new());
        assert_eq!(poly_roots(&pp(5, &[4, 0, 1])).unwrap(), vec![1, 4]);
        assert_eq!(poly_roots(&pp(2, &[0, 1, 1])).unwrap(), vec![0, 1]);
        assert!(poly_roots(&PrimePoly::zero(3)).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&pp(2, &[1, 1, 1])).unwrap());
        assert!(is_irreducible(&pp(7, &[3, 1])).unwrap());
        // x^4+x^2+4 over Z_5: no roots, yet reducible
        let f = pp(5, &[4, 0, 1, 0, 1]);
        assert!(!is_irreducible(&f).unwrap());
        assert!(is_irreducible(&PrimePoly::one(2)).is_err());
    }

    #[test]
    fn factor_examples() {
        // x^4+x^2+4 = (x^2+3)^2 over Z_5
        let f = pp(5, &[4, 0, 1, 0, 1]);
        let fac = factor_poly(&f).unwrap();
        assert_eq!(fac.unit, 1);
        assert_eq!(fac.factors, vec![pp(5, &[3, 0, 1]), pp(5, &[3, 0, 1])]);
        let sq = poly_op(&pp(5, &[3, 0, 1]), &pp(5, &[3, 0, 1]), PolyOp::Mul).unwrap();
        assert_eq!(sq, f);

        let irr = pp(2, &[1, 1, 1]);
        assert_eq!(factor_poly(&irr).unwrap().factors, vec![irr.clone()]);

        let zz1 = pp(2, &[0, 1, 1]); // z^2+z = z(z+1)
        assert_eq!(
            factor_poly(&zz1).unwrap().factors,
            vec![pp(2, &[0, 1]), pp(2, &[1, 1])]
        );
    }

    #[test]
    fn factor_respects_limits() {
        let too_big = pp(5, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(factor_poly(&too_big), Err(PolyError::LimitExceeded));
    }

    #[test]
    fn monic_irreducibles_examples() {
        assert_eq!(
            monic_irreducibles(2, 1).unwrap(),
            vec![pp(2, &[0, 1]), pp(2, &[1, 1])]
        );
        assert_eq!(monic_irreducibles(2, 2).unwrap(), vec![pp(2, &[1, 1, 1])]);
        assert_eq!(monic_irreducibles(2, 3).unwrap().len(), 2);
        assert!(monic_irreducibles(17, 2).is_err());
    }

    #[test]
    fn necklace_count_identity() {
        // sum over e | d of e * |irreducibles of degree e| = p^d
        for p in [2u64, 3, 5] {
            for d in 1..=4usize {
                let total: u64 = (1..=d)
                    .filter(|e| d % e == 0)
                    .map(|e| e as u64 * monic_irreducibles(p, e).unwrap().len() as u64)
                    .sum();
                assert_eq!(total, p.pow(d as u32), "p={p} d={d}");
            }
        }
    }

    #[test]
    fn factor_reconstructs_exhaustively() {
        // every polynomial of degree <= 4 over Z_2, Z_3 (and degree <= 3 over Z_5)
        for (p, dmax) in [(2u64, 4usize), (3, 4), (5, 3)] {
            let total = (p as u128).pow(dmax as u32 + 1);
            for idx in 0..total {
                let mut coeffs = vec![0u64; dmax + 1];
                let mut k = idx;
                for c in coeffs.iter_mut() {
                    *c = (k % p as u128) as u64;
                    k /= p as u128;
                }
                let f = PrimePoly::new(p, coeffs).unwrap();
                if f.degree().map_or(true, |d| d == 0) {
                    continue;
                }
                let fac = factor_poly(&f).unwrap();
                let mut prod = PrimePoly::constant(p, fac.unit).unwrap();
                for g in &fac.factors {
                    assert!(is_irreducible(g).unwrap(), "factor {g} of {f}");
                    prod = poly_op(&prod, g, PolyOp::Mul).unwrap();
                }
                assert_eq!(prod, f);
                assert_eq!(
                    is_irreducible(&f).unwrap(),
                    fac.factors.len() == 1,
                    "f={f}"
                );
                if f.degree() >= Some(2) && !poly_roots(&f).unwrap().is_empty() {
                    assert!(!is_irreducible(&f).unwrap());
                }
            }
        }
    }

    #[test]
    fn parse_and_emit() {
        assert_eq!(PrimePoly::parse(2, "[1,1,1]").unwrap(), pp(2, &[1, 1, 1]));
        assert_eq!(PrimePoly::parse(2, "1+z+z^2").unwrap(), pp(2, &[1, 1, 1]));
        assert_eq!(PrimePoly::parse(5, "4 + x^2 + x^4").unwrap(), pp(5, &[4, 0, 1, 0, 1]));
        assert_eq!(PrimePoly::parse(5, "2*x").unwrap(), pp(5, &[0, 2]));
        assert_eq!(pp(2, &[1, 1, 1]).to_human(), "1+z+z^2");
        assert_eq!(pp(5, &[0, 2, 0, 3]).to_human(), "2z+3z^3");
        assert_eq!(PrimePoly::zero(3).to_human(), "0");
        assert!(PrimePoly::parse(2, "1+w").is_err());
    }
}
