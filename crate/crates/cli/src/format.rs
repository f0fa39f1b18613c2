//! CSV output with `%.12g`-style numbers.

use std::io::Write;

use steerlab::sweep::COLUMNS;
use steerlab::SweepRow;

const SIG_DIGITS: i32 = 12;

/// Formats `x` like C's `%.12g`: 12 significant digits, trailing zeros
/// removed, scientific notation for exponents below −4 or from 12 up.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (SIG_DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..SIG_DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn header() -> String {
    COLUMNS.join(",")
}

pub fn row_line(row: &SweepRow) -> String {
    row.fields()
        .iter()
        .map(|&v| fmt_g(v))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn write_rows<W: Write>(mut w: W, rows: &[SweepRow]) -> std::io::Result<()> {
    writeln!(w, "{}", header())?;
    for row in rows {
        writeln!(w, "{}", row_line(row))?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (0.952_405_882_652_670_8, "0.952405882653"),
            (30.0, "30"),
            (8.242_034_311_692_072, "8.24203431169"),
            (1.5e-5, "1.5e-05"),
            (0.0001234, "0.0001234"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1e-300, "1e-300"),
            (0.99999999999999, "1"),
            (9.9999999999999e-5, "0.0001"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g(x), want, "{x:e}");
        }
    }

    #[test]
    fn header_columns() {
        assert_eq!(
            header(),
            "t,g,p,m,mr,concurrence,si,s,fidelity,success_prob"
        );
    }
}
