//! Text formats shared by the catalog, frame and map inputs.
//!
//! Coefficients are written as integer codes of field elements (see
//! [`Fe`](crate::fq_poly::Fe)). Polynomials are either coefficient lists
//! `[c0,c1,...]` (constant term first) or expressions such as `x^5+x^3+1`,
//! `y^2*z+x*y*z-x^3-2*z^3`, where a leading `-` on a term negates it in the field.

use std::collections::BTreeMap;

use crate::fq_poly::{Fe, Field, Poly};
use crate::{Error, Result};

/// Splits `key=value` tokens on whitespace, keeping bracketed values whole.
pub fn key_values(line: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut tokens = Vec::new();
    for ch in line.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
        } else if !ch.is_whitespace() {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in `{line}`")));
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    for t in tokens {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, found `{t}`")))?;
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::Parse(format!("duplicate key `{k}`")));
        }
    }
    Ok(out)
}

/// Removes a trailing `#` comment and surrounding whitespace.
pub fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses `[1,0,2]` or `1,0,2` into integer codes. `[]` is the empty list.
pub fn code_list(s: &str) -> Result<Vec<u32>> {
    let inner = s.trim();
    let inner = inner
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .unwrap_or(inner)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad coefficient `{t}`")))
        })
        .collect()
}

pub fn parse_u64(key: &str, s: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("`{key}` expects a nonnegative integer, found `{s}`")))
}

/// One parsed term: coefficient code, sign, and exponents of `x`, `y`, `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: u32,
    pub negative: bool,
    pub exps: [u32; 3],
}

fn parse_term(raw: &str, negative: bool) -> Result<Term> {
    let mut coeff: Option<u32> = None;
    let mut exps = [0u32; 3];
    for factor in raw.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{raw}`")));
        }
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        let var = match base {
            "x" | "X" | "T" | "t" => Some(0),
            "y" | "Y" => Some(1),
            "z" | "Z" => Some(2),
            _ => None,
        };
        match var {
            Some(v) => exps[v] += exp,
            None => {
                let c = base
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                if coeff.is_some() || exp != 1 {
                    return Err(Error::Parse(format!(
                        "write one plain coefficient per term in `{raw}`"
                    )));
                }
                coeff = Some(c);
            }
        }
    }
    Ok(Term {
        coeff: coeff.unwrap_or(1),
        negative,
        exps,
    })
}

/// Parses a polynomial expression into terms.
pub fn expression(s: &str) -> Result<Vec<Term>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut terms = Vec::new();
    let mut negative = false;
    let mut cur = String::new();
    for (i, ch) in s.chars().enumerate() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(parse_term(&cur, negative)?);
            cur.clear();
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && i == 0 {
            negative = ch == '-';
        } else if ch == '+' || ch == '-' {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("trailing sign in `{s}`")));
    }
    terms.push(parse_term(&cur, negative)?);
    Ok(terms)
}

/// Accumulates terms into a map from exponent triple to field coefficient.
pub fn collect_terms(field: &Field, terms: &[Term]) -> Result<BTreeMap<[u32; 3], Fe>> {
    let mut out: BTreeMap<[u32; 3], Fe> = BTreeMap::new();
    for t in terms {
        let c = Fe(t.coeff);
        if !field.contains(c) {
            return Err(Error::NotInBaseField(t.coeff));
        }
        let c = if t.negative { field.neg(c) } else { c };
        let e = out.entry(t.exps).or_insert(Fe::ZERO);
        *e = field.add(*e, c);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// A univariate polynomial in `x` given as a list or as an expression.
pub fn univariate(field: &Field, s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.starts_with('[') || s.chars().all(|c| c.is_ascii_digit() || c == ',') {
        let codes = code_list(s)?;
        if let Some(&bad) = codes.iter().find(|&&c| !field.contains(Fe(c))) {
            return Err(Error::NotInBaseField(bad));
        }
        return Ok(Poly::from_codes(&codes));
    }
    let terms = collect_terms(field, &expression(s)?)?;
    let mut c = Vec::new();
    for (e, v) in terms {
        if e[1] != 0 || e[2] != 0 {
            return Err(Error::Parse(format!(
                "expected a polynomial in x alone, found `{s}`"
            )));
        }
        let i = e[0] as usize;
        if c.len() <= i {
            c.resize(i + 1, Fe::ZERO);
        }
        c[i] = v;
    }
    Ok(Poly::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_values_keep_brackets() {
        let kv = key_values("q=2 f=[0,0,1] gens=[[1], [0], [0], [1]; [1],[1],[0],[1]]").unwrap();
        assert_eq!(kv["q"], "2");
        assert_eq!(kv["f"], "[0,0,1]");
        assert_eq!(kv["gens"], "[[1],[0],[0],[1];[1],[1],[0],[1]]");
        assert!(key_values("q=2 q=3").is_err());
    }

    #[test]
    fn expressions() {
        let f = Field::new(5, 1).unwrap();
        let p = univariate(&f, "x^3 - x").unwrap();
        assert_eq!(p, Poly::from_codes(&[0, 4, 0, 1]));
        assert_eq!(univariate(&f, "[1,2,3]").unwrap(), Poly::from_codes(&[1, 2, 3]));
        assert_eq!(univariate(&f, "-1").unwrap(), Poly::from_codes(&[4]));
        assert!(univariate(&f, "x^2+7").is_err());
        assert!(univariate(&f, "x^2+").is_err());
        let terms = expression("y^2*z+x*y*z-x^3-2*z^3").unwrap();
        assert_eq!(terms.len(), 4);
        assert_eq!(
            terms[3],
            Term {
                coeff: 2,
                negative: true,
                exps: [0, 0, 3]
            }
        );
    }
}
