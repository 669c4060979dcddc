#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use shuffle_core::algebra::{parse_combination, render_terms, LinComb, Tensor};
use shuffle_core::biword::{self, parse_digits, Biword};
use shuffle_core::descent::{descd_component, spanning_sets_up_to};
use shuffle_core::{Error, Result};

pub fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e))
}

fn letter_degrees(s: &str, offset: usize) -> Result<Vec<u32>> {
    s.chars()
        .enumerate()
        .map(|(i, c)| {
            if c.is_ascii_lowercase() {
                Ok(c as u32 - 'a' as u32 + 1)
            } else {
                Err(Error::Parse {
                    position: offset + i,
                    message: "expected a degree letter".into(),
                })
            }
        })
        .collect()
}

/// Biword combinations whose degree rows are digits or letters (`a` = 1).
pub fn biwords(s: &str) -> LinComb<Biword> {
    parse_combination(s, |key, _| {
        let letters = key
            .split_once('|')
            .is_some_and(|(_, d)| d.chars().all(|c| c.is_ascii_lowercase()));
        if letters {
            Biword::parse_with(key, letter_degrees)
        } else {
            Biword::parse_with(key, parse_digits)
        }
    })
    .unwrap_or_else(|e| panic!("bad biword combination `{}`: {}", s, e))
}

pub fn lettered(b: &Biword) -> String {
    b.render_with(|d| char::from_u32('a' as u32 + d - 1).expect("small degree").to_string())
}

pub fn render_lettered(x: &LinComb<Biword>) -> String {
    render_terms(x, lettered)
}

pub fn render_lettered_tensors(x: &LinComb<Tensor<Biword>>) -> String {
    render_terms(x, |t| format!("{} ⊗ {}", lettered(&t.left), lettered(&t.right)))
}

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Checks every line of `worked.txt`; returns one message per mismatch.
pub fn check_worked() -> (usize, Vec<String>) {
    let text = golden("worked.txt");
    let mut count = 0;
    let mut bad = Vec::new();
    for line in data_lines(&text) {
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let [op, lhs, rhs, expected] = fields[..] else {
            bad.push(format!("malformed line `{}`", line));
            continue;
        };
        count += 1;
        let x = biwords(lhs);
        let got = match op {
            "prec" => render_lettered(&biword::prec(&x, &biwords(rhs))),
            "succ" => render_lettered(&biword::succ(&x, &biwords(rhs))),
            "delta_prec" => render_lettered_tensors(&biword::delta_prec(&x)),
            "delta_succ" => render_lettered_tensors(&biword::delta_succ(&x)),
            other => {
                bad.push(format!("unknown operation `{}`", other));
                continue;
            }
        };
        if got != expected {
            bad.push(format!("{} {} {}: got {}, expected {}", op, lhs, rhs, got, expected));
        }
    }
    (count, bad)
}

/// The stored basis tables by weight, as (monomial combination, value) pairs.
pub fn basis_tables() -> BTreeMap<usize, Vec<(String, String)>> {
    let text = golden("descd_basis.txt");
    let mut out: BTreeMap<usize, Vec<(String, String)>> = BTreeMap::new();
    let mut current = 0;
    for line in data_lines(&text) {
        if let Some(n) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = n.parse().expect("weight header");
            continue;
        }
        let (m, v) = line.split_once(" = ").expect("`monomials = value`");
        out.entry(current).or_default().push((m.to_string(), v.to_string()));
    }
    out
}

/// Evaluates `m1 - m2 + ...` over spanning monomials, looked up by their rendered name.
fn evaluate_monomials(s: &str, names: &BTreeMap<String, LinComb<Biword>>) -> Option<LinComb<Biword>> {
    let mut out = LinComb::zero();
    let mut negate = false;
    for tok in s.split_whitespace() {
        match tok {
            "+" => negate = false,
            "-" => negate = true,
            name => {
                let v = names.get(name)?;
                if negate {
                    out -= v;
                } else {
                    out += v;
                }
            }
        }
    }
    Some(out)
}

/// Checks the basis tables: stored values equal the evaluated monomials and
/// each table is a basis of its component.
pub fn check_basis_tables() -> (usize, Vec<String>) {
    let tables = basis_tables();
    let max = tables.keys().copied().max().unwrap_or(0);
    let levels = spanning_sets_up_to(max);
    let mut count = 0;
    let mut bad = Vec::new();
    for (&n, rows) in &tables {
        let names: BTreeMap<String, LinComb<Biword>> =
            levels[n].iter().map(|(m, v)| (m.to_string(), v.clone())).collect();
        let component = descd_component(n);
        let mut values = Vec::new();
        for (m, v) in rows {
            count += 1;
            let expected = biwords(v);
            match evaluate_monomials(m, &names) {
                None => bad.push(format!("n={}: unknown monomial in `{}`", n, m)),
                Some(got) if got != expected => {
                    bad.push(format!("n={}: {} evaluates to {}, table says {}", n, m, got, v))
                }
                Some(_) => {}
            }
            if !component.contains(&expected) {
                bad.push(format!("n={}: {} is outside the component", n, v));
            }
            values.push(expected);
        }
        let rank = shuffle_core::descent::rank(&values).expect("homogeneous");
        if rank != values.len() || rank != component.dimension() {
            bad.push(format!(
                "n={}: {} entries of rank {}, component dimension {}",
                n,
                values.len(),
                rank,
                component.dimension()
            ));
        }
    }
    (count, bad)
}
