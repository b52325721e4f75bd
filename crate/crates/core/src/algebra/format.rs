//! Human-readable rendering shared by every polynomial type.
//!
//! Terms are written `coef h^k * monomial`, e.g. `x1*x2`, `(1/2)h`, `2h*x3`,
//! `-(1/2)*x1^2`. The output re-parses with [`crate::expr`].

use num_rational::BigRational;
use num_traits::{One, Signed};

/// Display names of the generators x_1..x_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Names(Vec<String>);

impl Names {
    pub fn standard(dim: usize) -> Self {
        Names((1..=dim).map(|i| format!("x{i}")).collect())
    }

    pub fn new(names: Vec<String>) -> Self {
        Names(names)
    }

    pub fn get(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn as_slice(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn magnitude(c: &BigRational) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("({}/{})", a.numer(), a.denom())
    }
}

/// Appends `c·ħ^hpow·mono` to `out`, with a leading sign separator unless it
/// is the first term.
pub fn push_term(out: &mut String, c: &BigRational, hpow: usize, mono: &str) {
    let negative = c.is_negative();
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let mut prefix = String::new();
    if !(c.abs().is_one() && (hpow > 0 || !mono.is_empty())) {
        prefix.push_str(&magnitude(c));
    }
    match hpow {
        0 => {}
        1 => prefix.push('h'),
        k => prefix.push_str(&format!("h^{k}")),
    }
    if mono.is_empty() {
        out.push_str(&prefix);
    } else if prefix.is_empty() {
        out.push_str(mono);
    } else {
        out.push_str(&prefix);
        out.push('*');
        out.push_str(mono);
    }
}

/// Renders a sequence of generator indices as `x1^2*x2*x1`, compressing
/// consecutive repeats.
pub fn render_letters(letters: impl IntoIterator<Item = usize>, names: &Names) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    let flush = |parts: &mut Vec<String>, run: (usize, usize)| {
        let (l, n) = run;
        if n == 1 {
            parts.push(names.get(l).to_string());
        } else {
            parts.push(format!("{}^{}", names.get(l), n));
        }
    };
    for l in letters {
        run = match run {
            Some((p, n)) if p == l => Some((p, n + 1)),
            Some(r) => {
                flush(&mut parts, r);
                Some((l, 1))
            }
            None => Some((l, 1)),
        };
    }
    if let Some(r) = run {
        flush(&mut parts, r);
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hseries::{integer, rational};

    #[test]
    fn term_shapes() {
        let mut s = String::new();
        push_term(&mut s, &integer(1), 0, "x1*x2");
        push_term(&mut s, &rational(1, 2), 1, "");
        assert_eq!(s, "x1*x2 + (1/2)h");
        let mut s = String::new();
        push_term(&mut s, &integer(-2), 1, "x3");
        push_term(&mut s, &integer(1), 0, "");
        assert_eq!(s, "-2h*x3 + 1");
    }

    #[test]
    fn letter_runs() {
        let names = Names::standard(3);
        assert_eq!(render_letters([0, 0, 1, 0], &names), "x1^2*x2*x1");
        assert_eq!(render_letters([], &names), "");
    }
}
