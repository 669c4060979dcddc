use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use super::Rational;

/// A finitely supported rational linear combination of basis keys.
///
/// Zero coefficients are never stored, so two combinations are equal exactly
/// when their coefficients agree. Iteration follows the `Ord` of the key.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<B: Ord> {
    terms: BTreeMap<B, Rational>,
}

impl<B: Ord> Default for LinComb<B> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<B: Ord> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: B) -> Self {
        Self::term(key, Rational::one())
    }

    pub fn term(key: B, coeff: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Adds `coeff * key`, pruning the entry if it cancels.
    pub fn add_term(&mut self, key: B, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<B>, scale: &Rational)
    where
        B: Clone,
    {
        if scale.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &B) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, key: &B) -> bool {
        self.terms.contains_key(key)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Rational> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, B, Rational> {
        self.terms.keys()
    }

    pub fn leading(&self) -> Option<(&B, &Rational)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, r: &Rational) -> Self
    where
        B: Clone,
    {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * r)).collect(),
        }
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<C: Ord + Clone, F>(&self, mut f: F) -> LinComb<C>
    where
        F: FnMut(&B) -> LinComb<C>,
    {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabels keys; colliding images have their coefficients summed.
    pub fn map_keys<C: Ord, F: FnMut(&B) -> C>(&self, mut f: F) -> LinComb<C> {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    pub fn retain<F: FnMut(&B) -> bool>(&mut self, mut f: F) {
        self.terms.retain(|k, _| f(k));
    }

    pub(crate) fn range_after<'a>(&'a self, key: &B) -> impl Iterator<Item = (&'a B, &'a Rational)> {
        use std::ops::Bound::{Excluded, Unbounded};
        self.terms.range((Excluded(key), Unbounded))
    }
}

/// Extends a product given on basis keys bilinearly.
pub fn bilinear<A, B, C, F>(x: &LinComb<A>, y: &LinComb<B>, mut f: F) -> LinComb<C>
where
    A: Ord,
    B: Ord,
    C: Ord + Clone,
    F: FnMut(&A, &B) -> LinComb<C>,
{
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_scaled(&f(a, b), &(ca * cb));
        }
    }
    out
}

impl<B: Ord> FromIterator<(B, Rational)> for LinComb<B> {
    fn from_iter<I: IntoIterator<Item = (B, Rational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<'a, B: Ord> IntoIterator for &'a LinComb<B> {
    type Item = (&'a B, &'a Rational);
    type IntoIter = btree_map::Iter<'a, B, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord> IntoIterator for LinComb<B> {
    type Item = (B, Rational);
    type IntoIter = btree_map::IntoIter<B, Rational>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<B: Ord + Clone> AddAssign<&LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: &LinComb<B>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<B: Ord> AddAssign<LinComb<B>> for LinComb<B> {
    fn add_assign(&mut self, rhs: LinComb<B>) {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl<B: Ord + Clone> SubAssign<&LinComb<B>> for LinComb<B> {
    fn sub_assign(&mut self, rhs: &LinComb<B>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<B: Ord> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        self += rhs;
        self
    }
}

impl<B: Ord + Clone> Add<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<B: Ord> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(mut self, rhs: LinComb<B>) -> LinComb<B> {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
        self
    }
}

impl<B: Ord + Clone> Sub<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<B: Ord> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(mut self) -> LinComb<B> {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl<B: Ord + Clone> Mul<&Rational> for &LinComb<B> {
    type Output = LinComb<B>;
    fn mul(self, rhs: &Rational) -> LinComb<B> {
        self.scale(rhs)
    }
}

/// Renders `c*key` terms joined by ` + ` / ` - `; the zero combination is `0`.
impl<B: Ord + fmt::Display> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{}*", abs)?;
            }
            write!(f, "{}", k)?;
        }
        Ok(())
    }
}

impl<B: Ord + fmt::Display> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinComb[{}]", self)
    }
}

fn big_json(x: &num_bigint::BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

fn json_big(v: &Value) -> Option<num_bigint::BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(Into::into),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl<B: Ord + Serialize> LinComb<B> {
    /// `[{"coeff_num": .., "coeff_den": .., "key": ..}, ...]` in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(k, c)| {
                    json!({
                        "coeff_num": big_json(c.numer()),
                        "coeff_den": big_json(c.denom()),
                        "key": serde_json::to_value(k).expect("keys serialize"),
                    })
                })
                .collect(),
        )
    }
}

impl<B: Ord + DeserializeOwned> LinComb<B> {
    pub fn from_json(v: &Value) -> crate::Result<Self> {
        let bad = |m: &str| crate::Error::Format(m.to_string());
        let terms = v.as_array().ok_or_else(|| bad("expected an array of terms"))?;
        let mut out = LinComb::zero();
        for t in terms {
            let num = t
                .get("coeff_num")
                .and_then(json_big)
                .ok_or_else(|| bad("bad coeff_num"))?;
            let den = t
                .get("coeff_den")
                .and_then(json_big)
                .ok_or_else(|| bad("bad coeff_den"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            let key = B::deserialize(t.get("key").ok_or_else(|| bad("missing key"))?)?;
            out.add_term(key, Rational::new(num, den));
        }
        Ok(out)
    }
}
