//! Polynomials in two unknowns `a`, `b` over the rationals, with a plain
//! Buchberger algorithm for lex order `a > b`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{format_scalar, Scalar};

/// Exponents `(deg_a, deg_b)`. Their derived ordering is lex with `a > b`.
pub type Monomial = (u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::term(c, (0, 0))
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn a() -> Self {
        Poly::term(Scalar::one(), (1, 0))
    }

    pub fn b() -> Self {
        Poly::term(Scalar::one(), (0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(Monomial, &Scalar)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn degree_a(&self) -> u32 {
        self.terms.keys().map(|m| m.0).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.0 + m.1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(*m).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Poly { terms }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Scalar, m: Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, d)| ((n.0 + m.0, n.1 + m.1), d * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        other
            .terms
            .iter()
            .fold(Poly::zero(), |acc, (m, c)| acc.add(&self.mul_term(c, *m)))
    }

    /// Scaled so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    pub fn eval(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (m, c)| {
            acc + c * pow(a, m.0) * pow(b, m.1)
        })
    }

    /// Substitutes `b = b0`, leaving a polynomial in `a` alone.
    pub fn subst_b(&self, b0: &Scalar) -> Poly {
        self.terms.iter().fold(Poly::zero(), |acc, (m, c)| {
            acc.add(&Poly::term(c * pow(b0, m.1), (m.0, 0)))
        })
    }

    /// Coefficients of `a^k` as polynomials in `b`.
    pub fn coeffs_in_a(&self) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_a() as usize + 1];
        for (m, c) in &self.terms {
            out[m.0 as usize] = out[m.0 as usize].add(&Poly::term(c.clone(), (0, m.1)));
        }
        out
    }

    /// Dense coefficients, lowest degree first, of a polynomial in one
    /// variable; `var_a` selects which exponent is read.
    fn univariate(&self, var_a: bool) -> Vec<Scalar> {
        let deg = self
            .terms
            .keys()
            .map(|m| if var_a { m.0 } else { m.1 })
            .max()
            .unwrap_or(0);
        let mut out = vec![Scalar::zero(); deg as usize + 1];
        for (m, c) in &self.terms {
            out[if var_a { m.0 } else { m.1 } as usize] += c;
        }
        out
    }

    /// Division with remainder by an ordered list (lex `a > b`).
    pub fn reduce(&self, divisors: &[Poly]) -> Poly {
        let mut p = self.clone();
        let mut rem = Poly::zero();
        while let Some((m, c)) = p.leading() {
            let c = c.clone();
            let hit = divisors.iter().find_map(|g| {
                let (gm, gc) = g.leading()?;
                (gm.0 <= m.0 && gm.1 <= m.1).then(|| (g, (m.0 - gm.0, m.1 - gm.1), &c / gc))
            });
            match hit {
                Some((g, shift, q)) => p = p.sub(&g.mul_term(&q, shift)),
                None => {
                    rem = rem.add(&Poly::term(c, m));
                    p.terms.remove(&m);
                }
            }
        }
        rem
    }
}

fn pow(x: &Scalar, e: u32) -> Scalar {
    num_traits::pow(x.clone(), e as usize)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = [(m.0, "a"), (m.1, "b")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|(e, v)| {
                    if *e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect::<Vec<_>>()
                .join("*");
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{}", format_scalar(&abs))?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{}*{mono}", format_scalar(&abs))?,
            }
        }
        Ok(())
    }
}

fn lcm(x: Monomial, y: Monomial) -> Monomial {
    (x.0.max(y.0), x.1.max(y.1))
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = lcm(fm, gm);
    let lf = f.mul_term(&fc.recip(), (l.0 - fm.0, l.1 - fm.1));
    let lg = g.mul_term(&gc.recip(), (l.0 - gm.0, l.1 - gm.1));
    lf.sub(&lg)
}

/// Reduced Gröbner basis (lex `a > b`), monic, sorted by leading monomial.
/// The zero ideal gives an empty basis, the unit ideal `[1]`.
pub fn groebner(gens: &[Poly]) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(Poly::monic)
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, _) = g[i].leading().unwrap();
        let (mj, _) = g[j].leading().unwrap();
        // Coprime leading monomials reduce to zero.
        if (mi.0 == 0 || mj.0 == 0) && (mi.1 == 0 || mj.1 == 0) {
            continue;
        }
        let r = s_poly(&g[i], &g[j]).reduce(&g);
        if !r.is_zero() {
            g.push(r.monic());
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // Minimalize, then inter-reduce.
    let mut min: Vec<Poly> = Vec::new();
    for (idx, p) in g.iter().enumerate() {
        let (m, _) = p.leading().unwrap();
        let divisible = g.iter().enumerate().any(|(o, q)| {
            let (qm, _) = q.leading().unwrap();
            o != idx && qm.0 <= m.0 && qm.1 <= m.1 && (qm != m || o < idx)
        });
        if !divisible {
            min.push(p.clone());
        }
    }
    let mut out: Vec<Poly> = (0..min.len())
        .map(|i| {
            let others: Vec<Poly> = min
                .iter()
                .enumerate()
                .filter(|(o, _)| *o != i)
                .map(|(_, p)| p.clone())
                .collect();
            let (m, c) = min[i].leading().unwrap();
            let tail = min[i].sub(&Poly::term(c.clone(), m)).reduce(&others);
            Poly::term(c.clone(), m).add(&tail).monic()
        })
        .collect();
    out.sort_by_key(|p| p.leading().map(|(m, _)| m));
    out
}

const DIVISOR_CAP: u64 = 1_000_000;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_CAP {
        return None;
    }
    Some((1..=n).filter(|d| n % d == 0).map(BigInt::from).collect())
}

/// Rational roots (distinct, ascending) of a univariate polynomial given
/// lowest degree first. `None` if the coefficients are too large to search.
pub fn rational_roots(coeffs: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut roots = Vec::new();
    let lead_zeros = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zeros > 0 {
        roots.push(Scalar::zero());
        c.drain(..lead_zeros);
    }
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c
        .iter()
        .map(|x| (x * BigRational::from(den.clone())).to_integer())
        .collect();
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last().unwrap())?;
    let horner = |x: &Scalar| c.iter().rev().fold(Scalar::zero(), |acc, k| acc * x + k);
    for p in &ps {
        for q in &qs {
            for s in [1, -1] {
                let x = BigRational::new(p * s, q.clone());
                if horner(&x).is_zero() && !roots.contains(&x) {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}

/// The real-algebraic picture of `V(I)` that the solver can certify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    Empty,
    /// Every `(a, b)` is a solution.
    Plane,
    /// Finitely many points, all rational. `complete` is false when some
    /// root of an eliminant could not be shown rational or ruled out.
    Points {
        points: Vec<(Scalar, Scalar)>,
        complete: bool,
    },
    /// The curve `poly = 0`, parametrized as `a = param(b)`.
    Curve {
        poly: Poly,
        param: Poly,
    },
    Unresolved,
}

impl SolutionSet {
    pub fn contains(&self, a: &Scalar, b: &Scalar) -> Option<bool> {
        match self {
            SolutionSet::Empty => Some(false),
            SolutionSet::Plane => Some(true),
            SolutionSet::Points { points, complete } => {
                let hit = points.iter().any(|(x, y)| x == a && y == b);
                if hit || *complete {
                    Some(hit)
                } else {
                    None
                }
            }
            SolutionSet::Curve { poly, .. } => Some(poly.eval(a, b).is_zero()),
            SolutionSet::Unresolved => None,
        }
    }
}

impl fmt::Display for SolutionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionSet::Empty => write!(f, "empty"),
            SolutionSet::Plane => write!(f, "all (a, b)"),
            SolutionSet::Points { points, complete } => {
                let ps: Vec<String> = points
                    .iter()
                    .map(|(a, b)| format!("({}, {})", format_scalar(a), format_scalar(b)))
                    .collect();
                write!(f, "{{{}}}", ps.join(", "))?;
                if !complete {
                    write!(f, " plus possibly irrational points")?;
                }
                Ok(())
            }
            SolutionSet::Curve { poly, param } => {
                write!(f, "curve {poly} = 0, i.e. a = {param}, b free")
            }
            SolutionSet::Unresolved => write!(f, "unresolved"),
        }
    }
}

/// Reads the solution set off a reduced lex Gröbner basis.
pub fn solve(gb: &[Poly]) -> SolutionSet {
    if gb.is_empty() {
        return SolutionSet::Plane;
    }
    if gb.len() == 1 && gb[0].total_degree() == 0 {
        return SolutionSet::Empty;
    }
    // In lex order the basis element free of `a`, if any, comes first.
    if gb[0].degree_a() == 0 {
        let Some(bs) = rational_roots(&gb[0].univariate(false)) else {
            return SolutionSet::Unresolved;
        };
        let deg_b = gb[0].univariate(false).len() - 1;
        let mut complete = bs.len() == deg_b;
        let mut points = Vec::new();
        for b0 in bs {
            let rest: Vec<Poly> = gb[1..].iter().map(|p| p.subst_b(&b0)).collect();
            let g = groebner(&rest);
            if g.is_empty() {
                return SolutionSet::Unresolved;
            }
            if g.len() == 1 && g[0].total_degree() == 0 {
                continue;
            }
            let coeffs = g[0].univariate(true);
            match rational_roots(&coeffs) {
                Some(r) => {
                    complete &= r.len() == coeffs.len() - 1;
                    points.extend(r.into_iter().map(|a0| (a0, b0.clone())));
                }
                None => return SolutionSet::Unresolved,
            }
        }
        return SolutionSet::Points { points, complete };
    }
    if gb.len() == 1 && gb[0].degree_a() == 1 {
        let c = gb[0].coeffs_in_a();
        if c[1].total_degree() == 0 {
            let lead = c[1].leading().unwrap().1.clone();
            return SolutionSet::Curve {
                poly: gb[0].clone(),
                param: c[0].scale(&-lead.recip()),
            };
        }
    }
    SolutionSet::Unresolved
}
