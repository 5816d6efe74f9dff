use num_rational::Ratio;

pub type Rational = Ratio<i64>;

/// Parses `3`, `1/4`, `0.25` or `-1.5` exactly.
pub fn parse_ratio(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    let bad = || format!("not a rational number: `{text}`");
    if let Some((num, den)) = t.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(format!("zero denominator in `{text}`"));
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = int.trim_start_matches(['-', '+']);
        if frac.is_empty() && digits.is_empty() {
            return Err(bad());
        }
        if !digits.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        if frac.len() > 15 {
            return Err(format!("too many decimal places in `{text}`"));
        }
        let scale = 10i64.pow(frac.len() as u32);
        let whole: i64 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let part: i64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = whole
            .checked_mul(scale)
            .and_then(|w| w.checked_add(part))
            .ok_or_else(bad)?;
        let r = Ratio::new(num, scale);
        return Ok(if negative { -r } else { r });
    }
    t.parse::<i64>().map(Ratio::from_integer).map_err(|_| bad())
}

/// Smallest integer not below `r`; `r` must be non-negative.
pub fn ceil_nonneg(r: Rational) -> usize {
    debug_assert!(r >= Rational::from_integer(0));
    r.ceil().to_integer() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_ratio("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_ratio("1/4").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_ratio("3").unwrap(), Ratio::from_integer(3));
        assert_eq!(parse_ratio("-1.5").unwrap(), Ratio::new(-3, 2));
        assert_eq!(parse_ratio(".5").unwrap(), Ratio::new(1, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
        assert!(parse_ratio(".").is_err());
    }

    #[test]
    fn ceiling() {
        assert_eq!(ceil_nonneg(Ratio::new(7, 2)), 4);
        assert_eq!(ceil_nonneg(Ratio::from_integer(3)), 3);
    }
}
