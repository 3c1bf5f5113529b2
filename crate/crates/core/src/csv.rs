//! CSV emission with round-trippable floats.

/// 17 significant digits; parsing the result yields the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// A rectangular CSV document built row by row.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// One CSV cell.
pub enum Cell<'a> {
    F(f64),
    I(i64),
    U(u64),
    S(&'a str),
}

impl Cell<'_> {
    fn render(&self) -> String {
        match self {
            Cell::F(x) => fmt_f64(*x),
            Cell::I(x) => x.to_string(),
            Cell::U(x) => x.to_string(),
            Cell::S(s) => s.to_string(),
        }
    }
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, cells: &[Cell]) {
        assert_eq!(cells.len(), self.header.len(), "row width must match header");
        self.rows.push(cells.iter().map(Cell::render).collect());
    }

    /// RFC 4180 text with `\n` line ends; fields holding commas are quoted.
    pub fn render(&self) -> String {
        let mut w = ::csv::WriterBuilder::new().terminator(::csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn floats_roundtrip(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let back: f64 = fmt_f64(x).parse().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn table_renders_header_and_rows() {
        let mut t = Table::new(&["n", "value"]);
        t.push(&[Cell::U(3), Cell::F(0.5)]);
        assert_eq!(t.render(), "n,value\n3,5.0000000000000000e-1\n");
        t.push(&[Cell::S("a,b"), Cell::I(-1)]);
        assert!(t.render().ends_with("\"a,b\",-1\n"));
    }
}
