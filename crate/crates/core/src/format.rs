//! Plain-text tensor format.
//!
//! The first non-comment line is `m n` (order and dimension). Every further
//! non-comment line is one entry: `i1 i2 ... im re` or `i1 i2 ... im re im`,
//! whitespace separated, indices 1-based. A `#` starts a comment that runs
//! to the end of the line. Listing an index tuple twice is an error, even
//! if one of the listed values is zero.

use num_complex::Complex64;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::tensor::Tensor;

impl Tensor {
    /// Parses the text format. Errors carry the 1-based source line number.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, raw)| (k + 1, strip_comment(raw)))
            .filter(|(_, s)| !s.is_empty());

        let (header_line, header) = lines.next().ok_or(ParseError {
            line: text.lines().count().max(1),
            kind: ParseErrorKind::MissingHeader,
        })?;
        let (order, dim) = parse_header(header_line, header)?;

        let mut entries = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != order + 1 && fields.len() != order + 2 {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::BadFieldCount {
                        expected: order + 1,
                        got: fields.len(),
                    },
                }
                .into());
            }
            let mut idx = Vec::with_capacity(order);
            for field in &fields[..order] {
                let k: usize = field.parse().map_err(|_| ParseError {
                    line,
                    kind: ParseErrorKind::BadIndex(field.to_string()),
                })?;
                if k < 1 || k > dim {
                    return Err(ParseError {
                        line,
                        kind: ParseErrorKind::IndexOutOfRange { index: k, dim },
                    }
                    .into());
                }
                idx.push(k);
            }
            let re = parse_float(line, fields[order])?;
            let im = if fields.len() == order + 2 {
                parse_float(line, fields[order + 1])?
            } else {
                0.0
            };
            if !seen.insert(idx.clone()) {
                return Err(ParseError {
                    line,
                    kind: ParseErrorKind::DuplicateIndexTuple(idx),
                }
                .into());
            }
            entries.push((idx, Complex64::new(re, im)));
        }

        Tensor::from_entries(order, dim, entries).map_err(|e| match e {
            // from_entries re-checks tuples, but line information is gone by
            // then; everything it can still catch was validated above except
            // these two, which cannot occur for parsed input.
            Error::OrderTooSmall(_) | Error::DimTooSmall(_) => unreachable!(),
            other => other,
        })
    }

    /// Serializes in the same text format, entries in lexicographic tuple
    /// order, both real and imaginary parts always written. Floats use the
    /// shortest representation that round-trips, so `from_text(to_text(a))`
    /// reproduces `a` exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {}\n", self.order(), self.dim()));
        for (idx, value) in self.entries() {
            for k in idx {
                out.push_str(&format!("{k} "));
            }
            out.push_str(&format!("{:?} {:?}\n", value.re, value.im));
        }
        out
    }
}

fn strip_comment(raw: &str) -> &str {
    match raw.find('#') {
        Some(pos) => raw[..pos].trim(),
        None => raw.trim(),
    }
}

fn parse_header(line: usize, body: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::BadHeader,
        }
        .into());
    }
    let order: usize = fields[0].parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadHeader,
    })?;
    let dim: usize = fields[1].parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadHeader,
    })?;
    if order < 2 {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::OrderTooSmall(order),
        }
        .into());
    }
    if dim < 1 {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::DimTooSmall(dim),
        }
        .into());
    }
    Ok((order, dim))
}

fn parse_float(line: usize, field: &str) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::BadNumber(field.to_string()),
    })?;
    if !v.is_finite() {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::NonFinite,
        }
        .into());
    }
    Ok(v)
}
