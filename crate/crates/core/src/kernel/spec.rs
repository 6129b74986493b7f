//! Flat key-value kernel specification format.
//!
//! ```text
//! # comments run to end of line; statements are separated by newlines or ';'
//! kind = power_law            # power_law | mixture | distributed_order | measure
//! alpha = 0.5                 # power_law: exponent in (0, 1)
//! weights = 1, 1              # mixture: positive weights
//! exponents = 0.5, 0.3333     # mixture: exponents in (0, 1), same length as weights
//! mu_nodes = 1                # distributed_order: mu at alpha_j = j/(n-1), polynomial interpolant
//! measure_atoms = 1:1, 0:2    # measure: location:mass pairs
//! measure_density = 2:0.5     # measure: location:weight quadrature nodes (optional)
//! ```
//!
//! Reals may be written in decimal or scientific notation. Keys that do not
//! belong to the declared kind are rejected, as are repeated keys.

use std::collections::BTreeMap;

use super::{DistributedOrder, KernelSymbol, OrderWeight, StieltjesMeasure};
use crate::error::{Error, Result};

const KEYS: [&str; 7] = ["kind", "alpha", "weights", "exponents", "mu_nodes", "measure_atoms", "measure_density"];

fn parse_real(field: &str, text: &str) -> Result<f64> {
    let v: f64 =
        text.trim().parse().map_err(|_| Error::invalid(field, format!("'{}' is not a real number", text.trim())))?;
    if !v.is_finite() {
        return Err(Error::invalid(field, format!("'{}' is not finite", text.trim())));
    }
    Ok(v)
}

fn parse_list(field: &str, text: &str) -> Result<Vec<f64>> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_real(field, s)).collect()
}

fn parse_pairs(field: &str, text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| Error::invalid(field, format!("'{}' is not location:mass", item.trim())))?;
            Ok((parse_real(field, a)?, parse_real(field, b)?))
        })
        .collect()
}

fn normalize_kind(kind: &str) -> String {
    kind.trim().to_ascii_lowercase().replace(['_', '-', ' '], "")
}

fn take<'a>(fields: &mut BTreeMap<&str, &'a str>, key: &'static str) -> Result<&'a str> {
    fields.remove(key).ok_or_else(|| Error::invalid(key, "missing"))
}

/// Parses a kernel specification.
pub fn parse(text: &str) -> Result<KernelSymbol> {
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for stmt in line.split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let (key, value) = stmt.split_once('=').ok_or_else(|| Error::invalid(stmt, "expected 'key = value'"))?;
            let key = key.trim();
            let key = KEYS.iter().find(|k| **k == key).ok_or_else(|| Error::invalid(key, "unknown field"))?;
            if fields.insert(key, value.trim()).is_some() {
                return Err(Error::invalid(*key, "field given twice"));
            }
        }
    }
    let kind = fields.remove("kind").ok_or_else(|| Error::invalid("kind", "missing"))?;
    let symbol = match normalize_kind(kind).as_str() {
        "powerlaw" => {
            let alpha = parse_real("alpha", take(&mut fields, "alpha")?)?;
            KernelSymbol::power_law(alpha)?
        }
        "mixture" => {
            let weights = parse_list("weights", take(&mut fields, "weights")?)?;
            let exponents = parse_list("exponents", take(&mut fields, "exponents")?)?;
            if weights.len() != exponents.len() {
                return Err(Error::invalid(
                    "exponents",
                    format!("{} exponents for {} weights", exponents.len(), weights.len()),
                ));
            }
            let terms: Vec<(f64, f64)> = weights.into_iter().zip(exponents).collect();
            KernelSymbol::mixture(&terms)?
        }
        "distributedorder" => {
            let samples = parse_list("mu_nodes", take(&mut fields, "mu_nodes")?)?;
            KernelSymbol::DistributedOrder(DistributedOrder::from_samples(samples)?)
        }
        "measure" | "frommeasure" => {
            let atoms = match fields.remove("measure_atoms") {
                Some(v) => parse_pairs("measure_atoms", v)?,
                None => Vec::new(),
            };
            let density = match fields.remove("measure_density") {
                Some(v) => parse_pairs("measure_density", v)?,
                None => Vec::new(),
            };
            KernelSymbol::FromMeasure(StieltjesMeasure::new(atoms, density)?)
        }
        other => return Err(Error::invalid("kind", format!("unknown kind '{other}'"))),
    };
    if let Some(key) = fields.keys().next() {
        return Err(Error::invalid(*key, format!("not used by kind '{}'", kind.trim())));
    }
    Ok(symbol)
}

fn join(values: impl Iterator<Item = f64>) -> String {
    values.map(|v| format!("{v:?}")).collect::<Vec<_>>().join(", ")
}

fn join_pairs(pairs: &[(f64, f64)]) -> String {
    pairs.iter().map(|(a, b)| format!("{a:?}:{b:?}")).collect::<Vec<_>>().join(", ")
}

/// Renders `symbol` in the specification format, one statement per line.
/// Fails for distributed-order kernels whose weight was given as a function.
pub fn render(symbol: &KernelSymbol) -> Result<String> {
    let out = match symbol {
        KernelSymbol::PowerLaw { alpha } => format!("kind = power_law\nalpha = {alpha:?}\n"),
        KernelSymbol::Mixture(terms) => format!(
            "kind = mixture\nweights = {}\nexponents = {}\n",
            join(terms.iter().map(|t| t.weight)),
            join(terms.iter().map(|t| t.exponent))
        ),
        KernelSymbol::DistributedOrder(d) => match d.weight() {
            OrderWeight::Samples(s) => {
                format!("kind = distributed_order\nmu_nodes = {}\n", join(s.iter().copied()))
            }
            OrderWeight::Function => {
                return Err(Error::invalid("mu_nodes", "weight given as a function has no text form"))
            }
        },
        KernelSymbol::FromMeasure(m) => {
            let mut s = String::from("kind = measure\n");
            if !m.atoms().is_empty() {
                s.push_str(&format!("measure_atoms = {}\n", join_pairs(m.atoms())));
            }
            if !m.density_nodes().is_empty() {
                s.push_str(&format!("measure_density = {}\n", join_pairs(m.density_nodes())));
            }
            s
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_each_kind() {
        let pl = parse("kind = power_law\nalpha = 5e-1").unwrap();
        assert_eq!(pl, KernelSymbol::PowerLaw { alpha: 0.5 });

        let mix = parse("kind=mixture; weights = 1, 1 ; exponents = 0.5, 0.25 # two terms").unwrap();
        assert_eq!(mix, KernelSymbol::mixture(&[(1.0, 0.5), (1.0, 0.25)]).unwrap());

        let dist = parse("kind = DistributedOrder\nmu_nodes = 1").unwrap();
        assert_eq!(dist, KernelSymbol::DistributedOrder(DistributedOrder::uniform()));

        let measure = parse("kind = measure\nmeasure_atoms = 1:1, 0:2.5").unwrap();
        let expected = StieltjesMeasure::new(vec![(1.0, 1.0), (0.0, 2.5)], vec![]).unwrap();
        assert_eq!(measure, KernelSymbol::FromMeasure(expected));
    }

    fn field_of(err: Error) -> String {
        match err {
            Error::InvalidInput { field, .. } => field,
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn errors_name_the_offending_field() {
        assert_eq!(field_of(parse("kind = power_law\nalpha = 1.5").unwrap_err()), "alpha");
        assert_eq!(field_of(parse("kind = power_law\nalpha = abc").unwrap_err()), "alpha");
        assert_eq!(field_of(parse("alpha = 0.5").unwrap_err()), "kind");
        assert_eq!(field_of(parse("kind = cubic").unwrap_err()), "kind");
        assert_eq!(field_of(parse("kind = power_law\nalpha = 0.5\nbeta = 2").unwrap_err()), "beta");
        assert_eq!(field_of(parse("kind = mixture\nweights = 1\nexponents = 0.5, 0.2").unwrap_err()), "exponents");
        assert_eq!(field_of(parse("kind = power_law\nalpha = 0.5\nmu_nodes = 1").unwrap_err()), "mu_nodes");
        assert_eq!(field_of(parse("kind = measure\nmeasure_atoms = 1").unwrap_err()), "measure_atoms");
        assert_eq!(field_of(parse("kind = power_law\nalpha = 0.5\nalpha = 0.4").unwrap_err()), "alpha");
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(
            alpha in 0.001f64..0.999,
            terms in prop::collection::vec((0.01f64..100.0, 0.001f64..0.999), 1..5),
            atoms in prop::collection::vec((0.0f64..1e3, 1e-3f64..1e3), 1..5),
        ) {
            let symbols = [
                KernelSymbol::power_law(alpha).unwrap(),
                KernelSymbol::mixture(&terms).unwrap(),
                KernelSymbol::FromMeasure(StieltjesMeasure::new(atoms, vec![]).unwrap()),
            ];
            for sym in symbols {
                let text = render(&sym).unwrap();
                prop_assert_eq!(parse(&text).unwrap(), sym);
            }
        }
    }
}
