//! Matrix Market reading and writing for dense Hermitian matrices.
//!
//! Reads `coordinate` and `array` files with `real`, `integer` or `complex`
//! fields and `general`, `symmetric` or `hermitian` qualifiers. Writes the
//! `array` format; numbers use shortest round-trip decimal form.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_complex::Complex64;
use psd_approx::{HermitianMatrix, Matrix, Scalar};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Coordinate,
    Array,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
}

/// A matrix read from disk, real unless the file declares a complex field.
#[derive(Clone, Debug, PartialEq)]
pub enum MmMatrix {
    Real(HermitianMatrix<f64>),
    Complex(HermitianMatrix<Complex64>),
}

impl MmMatrix {
    pub fn n(&self) -> usize {
        match self {
            MmMatrix::Real(a) => a.n(),
            MmMatrix::Complex(a) => a.n(),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_header(line: &str, no: usize) -> Result<(Format, Field, Symmetry), CliError> {
    let words: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_err(no, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'"));
    }
    let format = match words[2].as_str() {
        "coordinate" => Format::Coordinate,
        "array" => Format::Array,
        other => return Err(parse_err(no, format!("unsupported format '{other}'"))),
    };
    let field = match words[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        other => return Err(parse_err(no, format!("unsupported field '{other}'"))),
    };
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(parse_err(no, format!("unsupported symmetry '{other}'"))),
    };
    Ok((format, field, symmetry))
}

fn parse_num(tok: &str, no: usize) -> Result<f64, CliError> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(no, format!("invalid number '{tok}'")))
}

fn parse_value(toks: &[&str], field: Field, no: usize) -> Result<Complex64, CliError> {
    let want = if field == Field::Complex { 2 } else { 1 };
    if toks.len() != want {
        return Err(parse_err(no, format!("expected {want} value(s), found {}", toks.len())));
    }
    let re = parse_num(toks[0], no)?;
    let im = if want == 2 { parse_num(toks[1], no)? } else { 0.0 };
    Ok(Complex64::new(re, im))
}

/// Parses a Matrix Market stream into a dense Hermitian matrix.
pub fn read_matrix_market(reader: impl BufRead) -> Result<MmMatrix, CliError> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (no, first) = match lines.next() {
        Some((no, l)) => (no, l.map_err(CliError::io("<input>"))?),
        None => return Err(parse_err(1, "empty file")),
    };
    let (format, field, symmetry) = parse_header(&first, no)?;

    let mut data = lines.filter_map(|(no, l)| match l {
        Ok(s) => {
            let t = s.trim();
            (!t.is_empty() && !t.starts_with('%')).then(|| Ok((no, t.to_string())))
        }
        Err(e) => Some(Err(e)),
    });
    let mut next = |last: usize| -> Result<(usize, String), CliError> {
        match data.next() {
            Some(r) => r.map_err(CliError::io("<input>")),
            None => Err(parse_err(last + 1, "unexpected end of file")),
        }
    };

    let (size_no, size_line) = next(no)?;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(size_no, format!("invalid size '{t}'"))))
        .collect::<Result<_, _>>()?;
    let want = if format == Format::Coordinate { 3 } else { 2 };
    if dims.len() != want {
        return Err(parse_err(size_no, format!("expected {want} size fields")));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if rows != cols {
        return Err(parse_err(size_no, format!("matrix is {rows}x{cols}, not square")));
    }
    let n = rows;
    let mut m = Matrix::<Complex64>::zeros(n);
    let mirror = |m: &mut Matrix<Complex64>, i: usize, j: usize, v: Complex64| {
        m[(i, j)] = v;
        match symmetry {
            Symmetry::General => {}
            Symmetry::Symmetric => m[(j, i)] = v,
            Symmetry::Hermitian => m[(j, i)] = v.conj(),
        }
    };

    let mut last = size_no;
    match format {
        Format::Coordinate => {
            for _ in 0..dims[2] {
                let (no, line) = next(last)?;
                last = no;
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(parse_err(no, "expected 'row col value'"));
                }
                let idx = |t: &str| -> Result<usize, CliError> {
                    match t.parse::<usize>() {
                        Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                        _ => Err(parse_err(no, format!("index '{t}' out of range 1..{n}"))),
                    }
                };
                let (i, j) = (idx(toks[0])?, idx(toks[1])?);
                let v = parse_value(&toks[2..], field, no)?;
                mirror(&mut m, i, j, v);
            }
        }
        Format::Array => {
            for j in 0..n {
                let start = if symmetry == Symmetry::General { 0 } else { j };
                for i in start..n {
                    let (no, line) = next(last)?;
                    last = no;
                    let toks: Vec<&str> = line.split_whitespace().collect();
                    mirror(&mut m, i, j, parse_value(&toks, field, no)?);
                }
            }
        }
    }
    if let Some(extra) = data.next() {
        let (no, _) = extra.map_err(CliError::io("<input>"))?;
        return Err(parse_err(no, "unexpected data after the last entry"));
    }

    if field == Field::Complex {
        Ok(MmMatrix::Complex(HermitianMatrix::new(m)?))
    } else {
        let real = Matrix::from_row_major(n, m.into_vec().into_iter().map(|z| z.re).collect())?;
        Ok(MmMatrix::Real(HermitianMatrix::new(real)?))
    }
}

/// Shortest decimal string that parses back to `x`.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:?}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

/// Scalars that can be written to Matrix Market files.
pub trait MmScalar: Scalar {
    const FIELD: &'static str;
    fn write_entry(self, out: &mut String);
}

impl MmScalar for f64 {
    const FIELD: &'static str = "real";
    fn write_entry(self, out: &mut String) {
        out.push_str(&format_f64(self));
    }
}

impl MmScalar for Complex64 {
    const FIELD: &'static str = "complex";
    fn write_entry(self, out: &mut String) {
        let _ = write!(out, "{} {}", format_f64(self.re), format_f64(self.im));
    }
}

fn write_array<T: MmScalar>(
    mut w: impl Write,
    m: &Matrix<T>,
    symmetry: &str,
    lower_only: bool,
) -> std::io::Result<()> {
    let n = m.n();
    let mut out = format!("%%MatrixMarket matrix array {} {symmetry}\n{n} {n}\n", T::FIELD);
    for j in 0..n {
        for i in (if lower_only { j } else { 0 })..n {
            m[(i, j)].write_entry(&mut out);
            out.push('\n');
        }
    }
    w.write_all(out.as_bytes())
}

/// Writes the lower triangle in `array` format with a `symmetric`
/// (real) or `hermitian` (complex) qualifier.
pub fn write_hermitian<T: MmScalar>(w: impl Write, a: &HermitianMatrix<T>) -> std::io::Result<()> {
    let sym = if T::IS_COMPLEX { "hermitian" } else { "symmetric" };
    write_array(w, a.as_matrix(), sym, true)
}

pub fn write_general<T: MmScalar>(w: impl Write, m: &Matrix<T>) -> std::io::Result<()> {
    write_array(w, m, "general", false)
}

/// Reads whitespace-separated numbers, skipping `%` and `#` comment lines.
pub fn read_vector(reader: impl BufRead) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(CliError::io("<vector>"))?;
        let t = line.trim();
        if t.starts_with('%') || t.starts_with('#') {
            continue;
        }
        for tok in t.split_whitespace() {
            out.push(parse_num(tok, i + 1)?);
        }
    }
    Ok(out)
}

pub fn write_vector(mut w: impl Write, v: &[f64]) -> std::io::Result<()> {
    let mut out = String::new();
    for x in v {
        out.push_str(&format_f64(*x));
        out.push('\n');
    }
    w.write_all(out.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(s: &str) -> Result<MmMatrix, CliError> {
        read_matrix_market(s.as_bytes())
    }

    fn real(s: &str) -> HermitianMatrix<f64> {
        match read(s).unwrap() {
            MmMatrix::Real(a) => a,
            MmMatrix::Complex(_) => panic!("expected a real matrix"),
        }
    }

    #[test]
    fn array_symmetric_identity() {
        let a = real("%%MatrixMarket matrix array real symmetric\n2 2\n1\n0\n1\n");
        assert_eq!(a, HermitianMatrix::identity(2));
    }

    #[test]
    fn coordinate_lower_triangle_mirrored() {
        let a = real(
            "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 3\n1 1 1\n2 1 2\n2 2 1\n",
        );
        assert_eq!(a, HermitianMatrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap());
    }

    #[test]
    fn out_of_range_index_reports_line() {
        let e = read("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 3 5.0\n").unwrap_err();
        assert_eq!(e, CliError::Parse { line: 3, msg: "index '3' out of range 1..2".into() });
    }

    #[test]
    fn general_must_be_hermitian() {
        let e = read("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n1\n").unwrap_err();
        assert!(matches!(e, CliError::Core(psd_approx::Error::NotHermitian { .. })));
    }

    #[test]
    fn complex_hermitian_expansion() {
        let m = read(
            "%%MatrixMarket matrix coordinate complex hermitian\n2 2 3\n1 1 2 0\n2 1 1 1\n2 2 3 0\n",
        )
        .unwrap();
        let MmMatrix::Complex(a) = m else { panic!() };
        assert_eq!(a[(0, 1)], Complex64::new(1.0, -1.0));
        assert_eq!(a[(1, 0)], Complex64::new(1.0, 1.0));
    }

    #[test]
    fn integer_field_and_errors() {
        let a = real("%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 3\n2 2 4\n");
        assert_eq!(a, HermitianMatrix::from_real_diagonal(&[3.0, 4.0]));
        assert!(matches!(read(""), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(
            read("%%MatrixMarket matrix array real general\n2 3\n"),
            Err(CliError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read("%%MatrixMarket matrix array real symmetric\n2 2\n1\n0\n"),
            Err(CliError::Parse { line: 5, .. })
        ));
        assert!(matches!(
            read("%%MatrixMarket matrix array real symmetric\n1 1\nabc\n"),
            Err(CliError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn round_trip_exact() {
        let a = HermitianMatrix::from_rows(&[
            [0.1, 1.0 / 3.0, -2e-300],
            [1.0 / 3.0, 1e17, std::f64::consts::PI],
            [-2e-300, std::f64::consts::PI, -0.0],
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_hermitian(&mut buf, &a).unwrap();
        assert_eq!(real(std::str::from_utf8(&buf).unwrap()), a);
    }

    #[test]
    fn formatting() {
        assert_eq!(format_f64(1.0), "1");
        assert_eq!(format_f64(0.1), "0.1");
        assert_eq!(format_f64(1e-7), "1e-7");
        assert_eq!(format_f64(-2.5), "-2.5");
    }

    #[test]
    fn vectors() {
        let v = read_vector("% header\n1 2\n-inf\n3.5\n".as_bytes()).unwrap();
        assert_eq!(v, vec![1.0, 2.0, f64::NEG_INFINITY, 3.5]);
        let mut buf = Vec::new();
        write_vector(&mut buf, &v).unwrap();
        assert_eq!(read_vector(&buf[..]).unwrap(), v);
    }
}
