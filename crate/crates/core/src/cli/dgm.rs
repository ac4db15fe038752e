//! Plain-text diagram files: one `birth death` pair per line, `#` comments,
//! blank lines ignored.

use std::fmt;
use std::fs;
use std::path::Path;

use crate::geometry::{Diagram, Point};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub file: String,
    /// 1-based; 0 when the file could not be read.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}:{}: {}", self.file, self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

pub fn parse_diagram(text: &str, file: &str) -> Result<Diagram, ParseError> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError {
            file: file.to_string(),
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected two numbers, found {} field(s)", fields.len())));
        }
        let mut vals = [0.0; 2];
        for (v, s) in vals.iter_mut().zip(&fields) {
            *v = s
                .parse::<f64>()
                .map_err(|_| err(format!("'{s}' is not a number")))?;
            if !v.is_finite() {
                return Err(err(format!("'{s}' is not finite")));
            }
        }
        if vals[1] < vals[0] {
            return Err(err(format!("death {} < birth {}", fields[1], fields[0])));
        }
        points.push(Point::new(vals[0], vals[1]));
    }
    Ok(Diagram::new(points))
}

pub fn read_diagram(path: &Path) -> Result<Diagram, ParseError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| ParseError {
        file: name.clone(),
        line: 0,
        message: e.to_string(),
    })?;
    parse_diagram(&text, &name)
}

pub fn write_diagram(d: &Diagram, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for p in &d.points {
        out.push_str(&format_g17(p.x));
        out.push(' ');
        out.push_str(&format_g17(p.y));
        out.push('\n');
    }
    out
}

/// 17 significant digits in the style of C's `%.17g`: positional for
/// exponents in `[-5, 17)`, scientific otherwise, trailing zeros dropped.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if !(-5..17).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        let e_sign = if exp < 0 { '-' } else { '+' };
        return if frac.is_empty() {
            format!("{sign}{}e{e_sign}{:02}", &digits[..1], exp.abs())
        } else {
            format!("{sign}{}.{frac}e{e_sign}{:02}", &digits[..1], exp.abs())
        };
    }
    let (int, frac) = if exp < 0 {
        ("0".to_string(), format!("{}{}", "0".repeat((-exp - 1) as usize), digits))
    } else {
        let split = exp as usize + 1;
        (digits[..split].to_string(), digits[split..].to_string())
    };
    let frac = frac.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}
