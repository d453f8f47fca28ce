use std::fmt::Write;

/// 17 significant digits; `nan` and `inf` spelled out.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Header line plus one line per row, each ending in `\n`.
#[derive(Debug, Default)]
pub struct Table {
    text: String,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        let mut t = Self::default();
        t.row(header.iter().map(|s| s.as_ref().to_string()));
        t
    }

    pub fn row<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        let line = cells.into_iter().collect::<Vec<_>>().join(",");
        let _ = writeln!(self.text, "{line}");
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
