use std::fmt;

use num_traits::One;

use super::{parse_rational, LinComb, Rational};
use crate::error::{Error, Result};

/// Wraps a key with its rendered name; ordered by the key alone.
#[derive(Clone, Debug)]
pub struct Named<K> {
    pub key: K,
    pub name: String,
}

impl<K: Ord> PartialEq for Named<K> {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl<K: Ord> Eq for Named<K> {}

impl<K: Ord> PartialOrd for Named<K> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<K: Ord> Ord for Named<K> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.cmp(&other.key)
    }
}

impl<K> fmt::Display for Named<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Renders a combination with custom key names, keeping the key order.
pub fn render_terms<K: Ord + Clone>(x: &LinComb<K>, name: impl Fn(&K) -> String) -> String {
    x.map_keys(|k| Named {
        key: k.clone(),
        name: name(k),
    })
    .to_string()
}

fn split_terms(s: &str) -> Result<Vec<(usize, Rational, &str)>> {
    if s.trim() == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut sign = Rational::one();
    let mut start = 0;
    let mut signed = false;
    let push = |start: usize, body: &'_ str, sign: &Rational, out: &mut Vec<_>| {
        let pos = start + body.len() - body.trim_start().len();
        out.push((pos, sign.clone(), &s[pos..start + body.trim_end().len()]));
    };
    for (i, ch) in s.char_indices() {
        if ch != '+' && ch != '-' {
            continue;
        }
        let body = &s[start..i];
        let trimmed = body.trim();
        if trimmed.is_empty() {
            if signed || !out.is_empty() {
                return Err(Error::Parse {
                    position: i,
                    message: "doubled sign".into(),
                });
            }
        } else if trimmed.ends_with('*') || trimmed.ends_with('/') {
            continue;
        } else {
            push(start, body, &sign, &mut out);
        }
        signed = true;
        sign = if ch == '-' { -Rational::one() } else { Rational::one() };
        start = i + 1;
    }
    let body = &s[start..];
    if body.trim().is_empty() {
        return Err(Error::Parse {
            position: s.len(),
            message: "expected a term".into(),
        });
    }
    push(start, body, &sign, &mut out);
    Ok(out)
}

/// Parses `2*k1 - 1/2*k2 + k3` with a key parser that receives each key and
/// its byte offset; `0` is the zero combination.
pub fn parse_combination<B: Ord>(s: &str, mut key: impl FnMut(&str, usize) -> Result<B>) -> Result<LinComb<B>> {
    let mut out = LinComb::zero();
    for (pos, sign, term) in split_terms(s)? {
        let (coeff, body, offset) = match term.split_once('*') {
            Some((c, k)) => {
                let coeff = parse_rational(c).ok_or_else(|| Error::Parse {
                    position: pos,
                    message: format!("bad coefficient `{}`", c.trim()),
                })?;
                (coeff, k, pos + c.len() + 1)
            }
            None => (Rational::one(), term, pos),
        };
        let lead = body.len() - body.trim_start().len();
        if body.trim().is_empty() {
            return Err(Error::Parse {
                position: offset + lead,
                message: "missing term after `*`".into(),
            });
        }
        out.add_term(key(body.trim(), offset + lead)?, coeff * sign);
    }
    Ok(out)
}
