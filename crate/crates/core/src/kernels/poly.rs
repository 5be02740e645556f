use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Num, ToPrimitive};

use crate::Rational;

/// Sparse bivariate polynomial `Σ c_ij xⁱ yʲ`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly2<C> {
    terms: BTreeMap<(u32, u32), C>,
}

fn nat<C: Num + Clone>(k: u32) -> C {
    let mut acc = C::zero();
    for _ in 0..k {
        acc = acc + C::one();
    }
    acc
}

impl<C: Num + Clone> Poly2<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c xⁱ yʲ`.
    pub fn monomial(c: C, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: C) {
        let entry = self.terms.entry((i, j)).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> C {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|(i, j)| i + j);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, C::zero() - c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(C::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn dx(&self) -> Self {
        Self::from_terms(
            self.terms.iter().filter(|((i, _), _)| *i > 0).map(|((i, j), c)| ((i - 1, *j), c.clone() * nat::<C>(*i))),
        )
    }

    pub fn dy(&self) -> Self {
        Self::from_terms(
            self.terms.iter().filter(|((_, j), _)| *j > 0).map(|((i, j), c)| ((*i, j - 1), c.clone() * nat::<C>(*j))),
        )
    }

    pub fn laplacian(&self) -> Self {
        self.dx().dx().add(&self.dy().dy())
    }

    /// `P(∂)` applied to `q`: every monomial `xⁱyʲ` of `self` acts as `∂ₓⁱ ∂ᵧʲ`.
    pub fn apply_as_operator(&self, q: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            let mut d = q.clone();
            for _ in 0..*i {
                d = d.dx();
            }
            for _ in 0..*j {
                d = d.dy();
            }
            out = out.add(&d.scale(c));
        }
        out
    }

    pub fn map<D: Num + Clone, F: Fn(&C) -> D>(&self, f: F) -> Poly2<D> {
        Poly2::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    pub fn eval(&self, x: C, y: C) -> C {
        let mut s = C::zero();
        for ((i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..*i {
                t = t * x.clone();
            }
            for _ in 0..*j {
                t = t * y.clone();
            }
            s = s + t;
        }
        s
    }
}

impl Poly2<Rational> {
    pub fn to_f64(&self) -> Poly2<f64> {
        self.map(|c| c.to_f64().unwrap_or(f64::NAN))
    }

    /// `|z|² = x² + y²`.
    pub fn radius_squared() -> Self {
        Self::x().pow(2).add(&Self::y().pow(2))
    }
}

impl Poly2<f64> {
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut s = 0.0;
        for ((i, j), c) in &self.terms {
            s += c * x.powi(*i as i32) * y.powi(*j as i32);
        }
        s
    }
}

impl<C: Num + Clone + fmt::Display> fmt::Display for Poly2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest power of x first, the usual reading order.
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mut factors = Vec::new();
            if mag != "1" || (*i == 0 && *j == 0) {
                factors.push(if mag.contains(['+', ' ']) { format!("({mag})") } else { mag });
            }
            for (var, e) in [("x", *i), ("y", *j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
