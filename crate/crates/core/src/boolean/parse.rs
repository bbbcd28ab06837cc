use super::{compose, iterate, make_named, BooleanFunction, TruthTable};
use crate::error::{Error, Result};

/// `term ( "o" term )*`, right-associated; `term = NAME[:p1,p2,...][^d]`.
/// `TT:<bits>` builds a function from its truth-table rows.
pub(super) fn parse_spec(spec: &str) -> Result<BooleanFunction> {
    let mut terms: Vec<Vec<&str>> = vec![Vec::new()];
    for tok in spec.split_whitespace() {
        if tok == "o" {
            terms.push(Vec::new());
        } else {
            terms.last_mut().unwrap().push(tok);
        }
    }
    let mut parsed = Vec::with_capacity(terms.len());
    for t in &terms {
        match t.as_slice() {
            [single] => parsed.push(parse_term(single)?),
            [] => return Err(Error::Parse(format!("empty term in `{spec}`"))),
            _ => {
                return Err(Error::Parse(format!(
                    "expected ` o ` between terms in `{spec}`"
                )))
            }
        }
    }
    let mut acc = parsed.pop().unwrap();
    while let Some(outer) = parsed.pop() {
        acc = compose(&outer, &acc);
    }
    Ok(acc)
}

fn parse_term(term: &str) -> Result<BooleanFunction> {
    let (body, depth) = match term.rsplit_once('^') {
        Some((b, d)) => {
            let d: u32 = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad iteration depth in `{term}`")))?;
            (b, d)
        }
        None => (term, 1),
    };
    let (name, params) = match body.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (body, None),
    };
    if name.is_empty() {
        return Err(Error::Parse(format!("missing name in `{term}`")));
    }
    let base = if name.eq_ignore_ascii_case("TT") {
        let rows = params.ok_or_else(|| Error::Parse("TT needs its rows".into()))?;
        let outputs = rows
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bad row `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if !outputs.len().is_power_of_two() {
            return Err(Error::Parse("TT rows must have power-of-two length".into()));
        }
        let arity = outputs.len().trailing_zeros() as usize;
        BooleanFunction::from_table(TruthTable::new(arity, outputs)?)
    } else {
        let params = match params {
            None => Vec::new(),
            Some(p) => p
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad parameter `{x}` in `{term}`")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        make_named(name, &params)?
    };
    iterate(&base, depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!(parse_spec("OR:2 o AND:3").unwrap().arity(), 6);
        assert_eq!(parse_spec("NAND^3").unwrap().arity(), 8);
        assert_eq!(parse_spec("RUB:4").unwrap().arity(), 16);
        assert_eq!(parse_spec("AND:2 o OR:2 o PARITY:2").unwrap().arity(), 8);
        assert_eq!(parse_spec("TT:0110").unwrap().arity(), 2);
        assert_eq!(parse_spec("NW^2").unwrap().arity(), 9);
    }

    #[test]
    fn grammar_errors() {
        assert!(parse_spec("").is_err());
        assert!(parse_spec("AND:2 OR:2").is_err());
        assert!(parse_spec("AND:x").is_err());
        assert!(parse_spec("AND:2 o").is_err());
        assert!(parse_spec("NAND^0").is_err());
        assert!(parse_spec("TT:011").is_err());
    }
}
