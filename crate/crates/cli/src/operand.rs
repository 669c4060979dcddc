//! Operand grammar for biword and word combinations.

use shuffle_core::algebra::{parse_combination, render_terms, LinComb, Tensor};
use shuffle_core::biword::{parse_digits, Biword};
use shuffle_core::words::Word;
use shuffle_core::{Error, Result};

/// How degree rows were written, so results can be echoed the same way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeStyle {
    Numeric,
    /// `a` = 1, `b` = 2, ...
    Letters,
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position: position + by,
            message,
        },
        other => other,
    }
}

fn letter_degrees(s: &str, offset: usize) -> Result<Vec<u32>> {
    s.chars()
        .enumerate()
        .map(|(i, c)| match c {
            'a'..='z' => Ok(c as u32 - 'a' as u32 + 1),
            _ => Err(Error::Parse {
                position: offset + i,
                message: "expected a degree letter".into(),
            }),
        })
        .collect()
}

fn is_letters(deg: &str) -> bool {
    !deg.is_empty() && deg.chars().all(|c| c.is_ascii_lowercase())
}

/// Parses `2*3142|1121 - 1/2*12|ab`. Degrees are a digit string, a comma
/// list, or letters; mixing letters with numbers across terms is rejected.
pub fn parse_biwords(s: &str) -> Result<(LinComb<Biword>, DegreeStyle)> {
    let mut style: Option<DegreeStyle> = None;
    let x = parse_combination(s, |key, offset| {
        let this = match key.split_once('|') {
            Some((_, d)) if is_letters(d.trim()) => DegreeStyle::Letters,
            _ => DegreeStyle::Numeric,
        };
        let b = match this {
            DegreeStyle::Letters => Biword::parse_with(key, letter_degrees),
            DegreeStyle::Numeric => Biword::parse_with(key, parse_digits),
        }
        .map_err(|e| shift(e, offset))?;
        if b.is_unit() {
            return Ok(b);
        }
        match style {
            Some(prev) if prev != this => Err(Error::Parse {
                position: offset,
                message: "degrees mix letters and numbers".into(),
            }),
            _ => {
                style = Some(this);
                Ok(b)
            }
        }
    })?;
    Ok((x, style.unwrap_or(DegreeStyle::Numeric)))
}

/// Parses a combination of words; the empty string is the unit.
pub fn parse_words(s: &str) -> Result<LinComb<Word>> {
    let s = if s.trim().is_empty() { "1" } else { s };
    parse_combination(s, |key, offset| key.parse::<Word>().map_err(|e| shift(e, offset)))
}

pub fn render_biword(b: &Biword, style: DegreeStyle) -> String {
    match style {
        DegreeStyle::Numeric => b.to_string(),
        DegreeStyle::Letters => b.render_with(|d| match char::from_u32('a' as u32 + d - 1) {
            Some(c) if (1..=26).contains(&d) => c.to_string(),
            _ => d.to_string(),
        }),
    }
}

pub fn render_biwords(x: &LinComb<Biword>, style: DegreeStyle) -> String {
    render_terms(x, |b| render_biword(b, style))
}

pub fn render_biword_tensors(x: &LinComb<Tensor<Biword>>, style: DegreeStyle) -> String {
    render_terms(x, |t| {
        format!("{} ⊗ {}", render_biword(&t.left, style), render_biword(&t.right, style))
    })
}

pub fn render_words(x: &LinComb<Word>) -> String {
    render_terms(x, Word::compact)
}

pub fn render_word_tensors(x: &LinComb<Tensor<Word>>) -> String {
    render_terms(x, |t| format!("{} ⊗ {}", t.left.compact(), t.right.compact()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_and_digits_agree() {
        let (a, sa) = parse_biwords("12|ab").unwrap();
        let (b, sb) = parse_biwords("12|12").unwrap();
        assert_eq!(a, b);
        assert_eq!((sa, sb), (DegreeStyle::Letters, DegreeStyle::Numeric));
        assert_eq!(render_biwords(&a, sa), "12|ab");
        let (c, _) = parse_biwords("3,1,2|1,10,1").unwrap();
        assert_eq!(c.keys().next().unwrap().deg(), &[1, 10, 1]);
    }

    #[test]
    fn positions_are_absolute() {
        match parse_biwords("12|11 + 21|1x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 12),
            other => panic!("{:?}", other.map(|(x, _)| x.to_string())),
        }
        assert!(parse_biwords("12|ab + 21|11").is_err());
    }

    #[test]
    fn words_and_unit() {
        assert_eq!(render_words(&parse_words("").unwrap()), "1");
        assert_eq!(render_words(&parse_words("2*ab2 - a").unwrap()), "-a + 2*ab2");
    }
}
