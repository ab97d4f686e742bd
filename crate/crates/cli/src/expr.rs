//! Short names for observables: `p3`, `p̃₄`, `ptilde4`, `h̃3`, `f4`,
//! `p#2`, `p#(2,1)`, or the canonical text `ptilde | [4]:1`.

use anyhow::{anyhow, bail, Result};
use kerov::algebra::{Basis, Observable};
use kerov::YoungDiagram;

const PREFIXES: [(&str, Basis); 12] = [
    ("psharp", Basis::PSharp),
    ("ptilde", Basis::PTilde),
    ("htilde", Basis::HTilde),
    ("ftilde", Basis::FreeCumulant),
    ("free", Basis::FreeCumulant),
    ("p#", Basis::PSharp),
    ("p̃", Basis::PTilde),
    ("h̃", Basis::HTilde),
    ("f̃", Basis::FreeCumulant),
    ("f", Basis::FreeCumulant),
    ("h", Basis::HTilde),
    ("p", Basis::P),
];

fn normalize_digits(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10).expect("digit"),
            '_' => ' ',
            other => other,
        })
        .filter(|c| !c.is_whitespace())
        .collect()
}

pub fn parse_observable(s: &str) -> Result<Observable> {
    let s = s.trim();
    if s.contains('|') {
        return Ok(Observable::from_canonical_text(s)?);
    }
    for (prefix, basis) in PREFIXES {
        let Some(rest) = s.strip_prefix(prefix) else {
            continue;
        };
        let rest = normalize_digits(rest);
        if basis == Basis::PSharp {
            let rho: YoungDiagram = rest.parse()?;
            if rho.is_empty() {
                bail!("p# needs a nonempty partition");
            }
            return Ok(Observable::psharp(&rho));
        }
        let k: u32 = rest.parse().map_err(|_| anyhow!("bad index {rest:?} in {s:?}"))?;
        return Ok(Observable::generator(basis, k)?);
    }
    bail!("cannot parse observable {s:?}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(parse_observable("p̃₄").unwrap(), Observable::generator(Basis::PTilde, 4).unwrap());
        assert_eq!(parse_observable("ptilde4").unwrap(), parse_observable("p̃_4").unwrap());
        assert_eq!(parse_observable("p#(2,1)").unwrap(), Observable::psharp(&"2,1".parse().unwrap()));
        assert_eq!(parse_observable("p3").unwrap().basis(), Basis::P);
        assert_eq!(parse_observable("f4").unwrap().basis(), Basis::FreeCumulant);
        assert_eq!(parse_observable("ptilde | [4]:1").unwrap(), parse_observable("p̃4").unwrap());
        assert!(parse_observable("q4").is_err());
        assert!(parse_observable("p̃x").is_err());
    }
}
