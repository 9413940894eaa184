use std::fmt::Write as _;

/// Nine significant digits, trailing zeros trimmed; scientific notation only
/// outside `[1e-5, 1e9)`.
pub fn sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        trim_fraction(format!("{:.*}", (8 - exp) as usize, x))
    } else {
        format!("{}e{exp}", trim_fraction(mantissa.to_string()))
    }
}

fn trim_fraction(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Minimal CSV builder: header first, then rows of preformatted cells.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv {
            text: header.join(",") + "\n",
        }
    }

    /// `#` comment lines, then the header.
    pub fn with_comments(comments: &[String], header: &[&str]) -> Self {
        let mut text = String::new();
        for c in comments {
            let _ = writeln!(text, "# {c}");
        }
        text.push_str(&header.join(","));
        text.push('\n');
        Csv { text }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(-0.0), "0");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(-97.0 / 99.0), "-0.97979798");
        assert_eq!(sig9(7.0 / 12.0), "0.583333333");
        assert_eq!(sig9(0.6), "0.6");
        assert_eq!(sig9(6.528611e-7), "6.528611e-7");
        assert_eq!(sig9(123456789012.0), "1.23456789e11");
        assert_eq!(sig9(f64::INFINITY), "inf");
        assert_eq!(sig9(12.5), "12.5");
    }

    #[test]
    fn csv_layout() {
        let mut csv = Csv::with_comments(&["n=3".into()], &["a", "b"]);
        csv.row(&["1".into(), "2".into()]);
        assert_eq!(csv.finish(), "# n=3\na,b\n1,2\n");
    }
}
