use kummer_sum::series::catalog_lookup;
use kummer_sum::{Error, SeriesDef};

/// Parses a non-negative integer count. Accepts plain integers (with optional
/// `_` or `,` separators) and exact float literals such as `1e9`.
pub fn parse_count(text: &str) -> Result<u64, String> {
    let cleaned: String = text.chars().filter(|c| *c != '_' && *c != ',').collect();
    if let Ok(n) = cleaned.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = cleaned
        .parse()
        .map_err(|_| format!("`{text}` is not a count"))?;
    // 2^53: beyond this not every integer is representable
    if !(x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= 9_007_199_254_740_992.0) {
        return Err(format!("`{text}` is not a non-negative integer"));
    }
    Ok(x as u64)
}

pub fn parse_positive_count(text: &str) -> Result<u64, String> {
    match parse_count(text)? {
        0 => Err("must be at least 1".into()),
        n => Ok(n),
    }
}

pub fn parse_positive(text: &str) -> Result<f64, String> {
    let x: f64 = text.parse().map_err(|_| format!("`{text}` is not a number"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{text}` is not a positive finite number"))
    }
}

fn is_bare_identifier(text: &str) -> bool {
    let mut chars = text.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Resolves `--series`: a catalog name, otherwise an expression in `n`
/// starting at `from` (default 1). A bare word that is neither a catalog
/// name nor the variable `n` is reported as an unknown series rather than
/// as an unknown variable.
pub fn resolve_series(text: &str, from: Option<u64>) -> Result<SeriesDef, Error> {
    match catalog_lookup(text) {
        Ok(series) => {
            if let Some(from) = from {
                if from != series.n0() {
                    eprintln!(
                        "warning: --from {from} ignored; catalog series `{}` starts at {}",
                        series.name(),
                        series.n0()
                    );
                }
            }
            Ok(series)
        }
        Err(Error::UnknownSeries(_)) if is_bare_identifier(text) && text != "n" => {
            Err(Error::UnknownSeries(text.to_string()))
        }
        Err(Error::UnknownSeries(_)) => SeriesDef::from_expression(text, from.unwrap_or(1)),
        Err(other) => Err(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e9"), Ok(1_000_000_000));
        assert_eq!(parse_count("100000"), Ok(100_000));
        assert_eq!(parse_count("1_000"), Ok(1000));
        assert_eq!(parse_count("0"), Ok(0));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert!(parse_count("1e300").is_err());
        assert!(parse_positive_count("0").is_err());
    }

    #[test]
    fn positives() {
        assert_eq!(parse_positive("0.01"), Ok(0.01));
        assert!(parse_positive("0").is_err());
        assert!(parse_positive("inf").is_err());
        assert!(parse_positive("NaN").is_err());
    }

    #[test]
    fn series_resolution() {
        assert_eq!(resolve_series("logA", None).unwrap().name(), "logA");
        assert!(matches!(resolve_series("nosuch", None), Err(Error::UnknownSeries(_))));
        let expr = resolve_series("1/(n*(n+1))", Some(3)).unwrap();
        assert_eq!(expr.n0(), 3);
        assert_eq!(resolve_series("n", Some(1)).unwrap().term(4).unwrap(), 4.0);
        assert!(resolve_series("1/(n", None).unwrap_err().is_usage());
    }
}
