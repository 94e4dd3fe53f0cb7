use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::isometry::Isometry;

/// Default ceiling on the number of words a single enumeration may visit.
pub const DEFAULT_WORD_BUDGET: u128 = 1_000_000;

/// A generator or inverse generator of one free factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub factor: u8,
    pub generator: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn new(factor: u8, generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { factor, generator, exponent }
    }

    pub fn inverse(self) -> Letter {
        Letter { exponent: -self.exponent, ..self }
    }
}

/// Freely cancel adjacent inverse pairs.
pub fn reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A freely reduced word in the letters of a free product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: &[Letter]) -> Self {
        Word { letters: reduce(letters) }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Maximal runs of letters from the same factor.
    pub fn blocks(&self) -> Vec<&[Letter]> {
        self.letters.chunk_by(|a, b| a.factor == b.factor).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut all = self.letters.clone();
        all.extend_from_slice(&other.letters);
        Word::new(&all)
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Evaluate with `factors[f][g]` the matrix of generator `g` of factor `f`.
    pub fn evaluate(&self, factors: &[&[Isometry]]) -> Isometry {
        self.letters.iter().fold(Isometry::identity(), |acc, l| {
            let g = &factors[l.factor as usize][l.generator];
            acc.compose(&if l.exponent > 0 { *g } else { g.inverse() })
        })
    }
}

/// Number of reduced words of length at most `depth` over an alphabet of
/// `letters` letters closed under inversion, including the empty word.
pub fn word_count(letters: usize, depth: usize) -> u128 {
    let l = letters as u128;
    let mut total = 1u128;
    let mut layer = 1u128;
    for k in 0..depth {
        layer = layer.saturating_mul(if k == 0 { l } else { l.saturating_sub(1) });
        total = total.saturating_add(layer);
    }
    total
}

/// Fold `visit` over every non-empty reduced word of length at most `depth`,
/// passing the letters and the product matrix.
///
/// Subtrees under each first letter run in parallel and their results are
/// combined in alphabet order, so the outcome is independent of scheduling.
/// Returns the folded value and the number of words visited.
pub fn fold_words<T, V, C>(
    alphabet: &[(Letter, Isometry)],
    depth: usize,
    budget: u128,
    init: T,
    visit: V,
    combine: C,
) -> Result<(T, u128)>
where
    T: Clone + Send + Sync,
    V: Fn(T, &[Letter], &Isometry) -> T + Sync,
    C: Fn(T, T) -> T,
{
    let words = word_count(alphabet.len(), depth);
    if words > budget {
        return Err(Error::DepthTooLarge { depth, words, budget });
    }
    if depth == 0 {
        return Ok((init, 0));
    }
    let parts: Vec<(T, u128)> = (0..alphabet.len())
        .into_par_iter()
        .map(|first| {
            let mut acc = init.clone();
            let mut count = 0u128;
            let mut letters = vec![alphabet[first].0];
            let mut stack = vec![alphabet[first].1];
            // Next alphabet index to try at each level.
            let mut next = vec![0usize];
            acc = visit(acc, &letters, &stack[0]);
            count += 1;
            while let Some(i) = next.last_mut() {
                if letters.len() >= depth || *i >= alphabet.len() {
                    next.pop();
                    letters.pop();
                    stack.pop();
                    continue;
                }
                let (l, g) = &alphabet[*i];
                *i += 1;
                if *l == letters.last().unwrap().inverse() {
                    continue;
                }
                let product = stack.last().unwrap().compose(g);
                letters.push(*l);
                acc = visit(acc, &letters, &product);
                count += 1;
                stack.push(product);
                next.push(0);
            }
            (acc, count)
        })
        .collect();
    Ok(parts.into_iter().fold((init, 0), |(a, n), (b, m)| (combine(a, b), n + m)))
}
