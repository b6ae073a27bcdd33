//! Word syntaxes.
//!
//! *Compact*: one character per letter, lowercase for a generator and
//! uppercase for its inverse. Ranks up to 3 use `x y z`; larger ranks (up to
//! 26) use `a`..`z`. For ranks ≤ 3 the letters `a b c` are accepted as
//! aliases of `x y z`.
//!
//! *Indexed*: `x1 X2 x10`, whitespace optional between letters.
//!
//! Both print the identity as `1`.

use clap::ValueEnum;
use hnrank::{Letter, Word};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Syntax {
    #[default]
    Compact,
    Indexed,
}

pub const MAX_COMPACT_RANK: usize = 26;

fn compact_name(rank: usize, generator: usize) -> char {
    let base = if rank <= 3 { b'x' } else { b'a' };
    (base + generator as u8 - 1) as char
}

fn compact_generator(rank: usize, c: char) -> Option<usize> {
    let lower = c.to_ascii_lowercase();
    if !lower.is_ascii_lowercase() {
        return None;
    }
    let g = if rank <= 3 && lower >= 'x' {
        lower as usize - 'x' as usize + 1
    } else {
        lower as usize - 'a' as usize + 1
    };
    (g <= rank).then_some(g)
}

/// Generator name, as used for edge labels.
pub fn generator_name(syntax: Syntax, rank: usize, generator: usize) -> String {
    match syntax {
        Syntax::Compact if rank <= MAX_COMPACT_RANK => compact_name(rank, generator).to_string(),
        _ => format!("x{generator}"),
    }
}

pub fn parse_word(text: &str, syntax: Syntax, rank: usize) -> Result<Word, CliError> {
    let text = text.trim();
    let bad = |why: String| CliError::Parse(format!("word {text:?}: {why}"));
    if text.is_empty() || text == "1" {
        return Ok(Word::identity(rank));
    }
    let mut letters = Vec::new();
    match syntax {
        Syntax::Compact => {
            if rank > MAX_COMPACT_RANK {
                return Err(bad(format!("compact syntax supports rank ≤ {MAX_COMPACT_RANK}")));
            }
            for c in text.chars().filter(|c| !c.is_whitespace()) {
                let g = compact_generator(rank, c)
                    .ok_or_else(|| bad(format!("{c:?} is not a generator of F_{rank}")))?;
                letters.push(Letter::new(g, c.is_ascii_uppercase()));
            }
        }
        Syntax::Indexed => {
            let mut chars = text.chars().filter(|c| !c.is_whitespace()).peekable();
            while let Some(c) = chars.next() {
                let inverse = match c {
                    'x' => false,
                    'X' => true,
                    _ => return Err(bad(format!("expected x or X, found {c:?}"))),
                };
                let mut digits = String::new();
                while let Some(d) = chars.next_if(char::is_ascii_digit) {
                    digits.push(d);
                }
                let g: usize = digits
                    .parse()
                    .map_err(|_| bad(format!("{c} must be followed by an index")))?;
                if g == 0 || g > rank {
                    return Err(bad(format!("index {g} outside 1..={rank}")));
                }
                letters.push(Letter::new(g, inverse));
            }
        }
    }
    Word::reduce(letters, rank).map_err(|e| bad(e.to_string()))
}

pub fn print_word(w: &Word, syntax: Syntax) -> String {
    if w.is_empty() {
        return "1".into();
    }
    match syntax {
        Syntax::Compact if w.rank() <= MAX_COMPACT_RANK => w
            .letters()
            .iter()
            .map(|l| {
                let c = compact_name(w.rank(), l.generator());
                if l.is_inverse() {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect(),
        _ => w.to_string(),
    }
}

/// Comma-separated generators, each `word` or `word:residue`.
pub fn parse_generators(text: &str, syntax: Syntax, rank: usize) -> Result<Vec<(Word, u64)>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let (word, residue) = match item.split_once(':') {
                Some((w, r)) => {
                    let r = r
                        .trim()
                        .parse()
                        .map_err(|_| CliError::Parse(format!("bad residue in {:?}", item.trim())))?;
                    (w, r)
                }
                None => (item, 0),
            };
            Ok((parse_word(word, syntax, rank)?, residue))
        })
        .collect()
}

pub fn print_generators(gens: &[(Word, u64)], syntax: Syntax) -> String {
    gens.iter()
        .map(|(w, c)| {
            let w = print_word(w, syntax);
            if *c == 0 {
                w
            } else {
                format!("{w}:{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}
