use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ExactError, Rational};

/// An ordered list of variable names shared by every polynomial of a system.
///
/// Cheap to clone; equality is pointer equality first, then name-list equality,
/// so two independently built ambients with the same names are interchangeable.
#[derive(Clone, Eq)]
pub struct Ambient(Arc<Vec<String>>);

impl Ambient {
    /// Panics on duplicate names (ambient variables must be distinct).
    pub fn new(names: Vec<String>) -> Self {
        for i in 1..names.len() {
            assert!(
                !names[..i].contains(&names[i]),
                "duplicate ambient variable {:?}",
                names[i]
            );
        }
        Ambient(Arc::new(names))
    }

    pub fn from_names(names: &[&str]) -> Self {
        Ambient::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// New ambient with `extra` names appended (used by lifts and pullbacks).
    pub fn extend(&self, extra: &[String]) -> Ambient {
        let mut names = self.0.as_ref().clone();
        names.extend_from_slice(extra);
        Ambient::new(names)
    }
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ambient({:?})", self.0)
    }
}

/// Exponent vector over a fixed ambient; total degree is the exponent sum.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn variable(nvars: usize, idx: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded lexicographic: first by total degree, then lexicographic on the
/// exponent vector. This fixed order is what makes every serialization of a
/// polynomial byte-identical across runs.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial over ℚ with named variables.
///
/// Invariants: no zero coefficients are stored, and all arithmetic partners
/// must share the ambient (checked; a mismatch is a programming error and
/// panics, while the fallible entry points like [`Poly::evaluate`] return
/// [`ExactError::AmbientMismatch`]).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ambient: Ambient,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ambient: &Ambient) -> Self {
        Poly { ambient: ambient.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ambient: &Ambient, value: Rational) -> Self {
        let mut p = Poly::zero(ambient);
        if !value.is_zero() {
            p.terms.insert(Monomial::constant(ambient.len()), value);
        }
        p
    }

    pub fn one(ambient: &Ambient) -> Self {
        Poly::constant(ambient, Rational::one())
    }

    pub fn variable(ambient: &Ambient, idx: usize) -> Self {
        assert!(idx < ambient.len(), "variable index out of range");
        let mut p = Poly::zero(ambient);
        p.terms.insert(Monomial::variable(ambient.len(), idx), Rational::one());
        p
    }

    pub fn from_terms<I>(ambient: &Ambient, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(ambient);
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), ambient.len(), "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_constant)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    fn assert_same_ambient(&self, other: &Poly) {
        assert!(
            self.ambient == other.ambient,
            "polynomial ambient mismatch: {:?} vs {:?}",
            self.ambient,
            other.ambient
        );
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ambient);
        }
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(&self.ambient);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Poly {
        assert!(var < self.ambient.len());
        let mut out = Poly::zero(&self.ambient);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] = e - 1;
            out.add_term(Monomial::new(exps), c * &Rational::from_int(e as i64));
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        if point.len() != self.ambient.len() {
            return Err(ExactError::AmbientMismatch {
                expected: self.ambient.len(),
                got: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= &x.pow(e);
                }
            }
            total += &v;
        }
        Ok(total)
    }

    /// The top-degree homogeneous part.
    pub fn leading_form(&self) -> Result<Poly, ExactError> {
        let d = self.degree().ok_or(ExactError::ZeroPolynomial)?;
        Ok(Poly {
            ambient: self.ambient.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Rewrites the polynomial over a larger ambient whose first variables are
    /// exactly this polynomial's ambient (pullbacks, lifts).
    pub fn lift_to(&self, larger: &Ambient) -> Poly {
        assert!(larger.len() >= self.ambient.len());
        debug_assert_eq!(&larger.names()[..self.ambient.len()], self.ambient.names());
        let n = larger.len();
        Poly {
            ambient: larger.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exponents().to_vec();
                    exps.resize(n, 0);
                    (Monomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Parses the canonical text form produced by `Display`, e.g.
    /// `"x1^2*x2 - 1/2*x2 + 3"`. Whitespace around `+`/`-` is optional.
    pub fn parse(ambient: &Ambient, input: &str) -> Result<Poly, ParseError> {
        parse_poly(ambient, input)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, coeff)) in self.terms().enumerate() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || mono.is_constant() {
                factors.push(mag.to_string());
            }
            for (idx, &e) in mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ambient.name(idx).to_string()),
                    _ => factors.push(format!("{}^{}", self.ambient.name(idx), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_ambient(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_ambient(rhs);
        let mut out = Poly::zero(&self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Failure to parse the canonical polynomial text form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unknown variable {name:?}")]
    UnknownVariable { name: String },
    #[error("malformed polynomial near {fragment:?}")]
    Malformed { fragment: String },
}

fn parse_poly(ambient: &Ambient, input: &str) -> Result<Poly, ParseError> {
    let input = input.trim();
    if input.is_empty() {
        return Err(ParseError::Malformed { fragment: String::new() });
    }
    if input == "0" {
        return Ok(Poly::zero(ambient));
    }

    // Split into signed term fragments at top-level + and -. A sign directly
    // after '^', '*' or '/' belongs to a number, but the canonical form never
    // produces that, so a simple split on +/- not at position 0 is enough,
    // except we must keep '-' attached when it follows 'e'? No exponent
    // notation exists here, so: split points are '+'/'-' that are not the
    // first character of the fragment.
    let bytes = input.as_bytes();
    let mut fragments: Vec<(bool, &str)> = Vec::new();
    let mut start = 0usize;
    let mut sign_neg = false;
    let mut i = 0usize;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        sign_neg = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        if bytes[i] == b'+' || bytes[i] == b'-' {
            fragments.push((sign_neg, input[start..i].trim()));
            sign_neg = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    fragments.push((sign_neg, input[start..].trim()));

    let mut poly = Poly::zero(ambient);
    for (neg, frag) in fragments {
        if frag.is_empty() {
            return Err(ParseError::Malformed { fragment: frag.to_string() });
        }
        let (mono, coeff) = parse_term(ambient, frag)?;
        let coeff = if neg { -coeff } else { coeff };
        poly.add_term(mono, coeff);
    }
    Ok(poly)
}

fn parse_term(ambient: &Ambient, frag: &str) -> Result<(Monomial, Rational), ParseError> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; ambient.len()];
    for piece in frag.split('*') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(ParseError::Malformed { fragment: frag.to_string() });
        }
        if piece.chars().next().unwrap().is_ascii_digit() {
            let c: Rational = piece
                .parse()
                .map_err(|_| ParseError::Malformed { fragment: piece.to_string() })?;
            coeff *= &c;
        } else {
            let (name, exp) = match piece.split_once('^') {
                Some((v, e)) => {
                    let exp: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| ParseError::Malformed { fragment: piece.to_string() })?;
                    (v.trim(), exp)
                }
                None => (piece, 1),
            };
            let idx = ambient
                .index_of(name)
                .ok_or_else(|| ParseError::UnknownVariable { name: name.to_string() })?;
            exps[idx] += exp;
        }
    }
    Ok((Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Ambient {
        Ambient::from_names(&["x1", "x2"])
    }

    #[test]
    fn graded_lex_orders_by_degree_then_lex() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        assert!(m(&[0, 2]) < m(&[1, 2]));
        assert!(m(&[1, 1]) < m(&[2, 0]));
        assert!(m(&[0, 2]) < m(&[1, 1]));
        assert!(m(&[0, 0]) < m(&[0, 1]));
    }

    #[test]
    fn display_leading_term_first() {
        let a = ab();
        let p = Poly::parse(&a, "1 - x2^2 + x1*x2").unwrap();
        assert_eq!(p.to_string(), "x1*x2 - x2^2 + 1");
    }

    #[test]
    fn parse_display_round_trip() {
        let a = ab();
        for s in ["x1^2 + x2^2 - 1", "-x1 + 1/2", "2*x1^3*x2 - 1/3*x2 + 4", "0", "-1/2"] {
            let p = Poly::parse(&a, s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(Poly::parse(&a, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn no_zero_terms_after_cancellation() {
        let a = ab();
        let p = Poly::parse(&a, "x1 + x2").unwrap();
        let q = Poly::parse(&a, "x1 - x2").unwrap();
        let s = &p - &q;
        assert_eq!(s.term_count(), 1);
        assert_eq!(s.to_string(), "2*x2");
    }

    #[test]
    fn evaluate_examples() {
        let a = ab();
        let circle = Poly::parse(&a, "x1^2 + x2^2").unwrap();
        let v = circle
            .evaluate(&[Rational::ratio(3, 5), Rational::ratio(4, 5)])
            .unwrap();
        assert_eq!(v, Rational::one());

        let cubic = Poly::parse(&a, "x1^3 - 2*x2^3").unwrap();
        assert_eq!(
            cubic.evaluate(&[Rational::zero(), Rational::zero()]).unwrap(),
            Rational::zero()
        );

        let hyper = Poly::parse(&a, "x1*x2 - 1").unwrap();
        assert_eq!(
            hyper
                .evaluate(&[Rational::from_int(2), Rational::ratio(1, 2)])
                .unwrap(),
            Rational::zero()
        );

        assert_eq!(
            circle.evaluate(&[Rational::one()]),
            Err(ExactError::AmbientMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn leading_form_examples() {
        let x = Ambient::from_names(&["x"]);
        let p = Poly::parse(&x, "x^3 - 2").unwrap();
        assert_eq!(p.leading_form().unwrap().to_string(), "x^3");

        let a = ab();
        let q = Poly::parse(&a, "x1^2 + x2^2 - 1").unwrap();
        assert_eq!(q.leading_form().unwrap().to_string(), "x1^2 + x2^2");

        let r = Poly::parse(&a, "x1*x2 + x1").unwrap();
        assert_eq!(r.leading_form().unwrap().to_string(), "x1*x2");

        assert_eq!(Poly::zero(&a).leading_form(), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn derivative_matches_power_rule() {
        let a = ab();
        let p = Poly::parse(&a, "x1^3*x2 - 2*x1 + 5").unwrap();
        assert_eq!(p.partial_derivative(0).to_string(), "3*x1^2*x2 - 2");
        assert_eq!(p.partial_derivative(1).to_string(), "x1^3");
    }
}
