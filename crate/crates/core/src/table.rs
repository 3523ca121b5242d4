//! Plain-text CSV tables with a commented metadata header.
//!
//! Layout:
//!
//! ```text
//! # nemsqueeze v1
//! # metric=r_factor
//! # units=1
//! # convention=paper_numbers
//! length_m,voltage_v,value
//! 1e-7,1e-2,3.1e0
//! ```
//!
//! Rows are row-major over the axes (first axis outer). Floats use Rust's
//! shortest round-trip exponent form, so writing the same table twice yields
//! identical bytes. Undefined values are written as an empty field.

use std::io::{self, Write};

use crate::dynamics::ModulationConvention;
use crate::sweep::Metric;

pub const FORMAT_TAG: &str = "# nemsqueeze v1";

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub metric: Metric,
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Axis column names and their sample values.
    pub axes: Vec<(String, Vec<f64>)>,
    pub columns: Vec<Column>,
    /// Written only when some column depends on the modulation convention.
    pub convention: Option<ModulationConvention>,
    /// Label of the unit used by a normalised time axis.
    pub time_unit: Option<String>,
}

impl Table {
    pub fn new(axes: Vec<(String, Vec<f64>)>) -> Self {
        Self {
            axes,
            columns: Vec::new(),
            convention: None,
            time_unit: None,
        }
    }

    pub fn push_column(&mut self, metric: Metric, values: Vec<Option<f64>>) {
        debug_assert_eq!(values.len(), self.row_count());
        self.columns.push(Column { metric, values });
    }

    pub fn row_count(&self) -> usize {
        self.axes.iter().map(|(_, v)| v.len()).product()
    }

    /// Axis coordinates of row `row`.
    pub fn coordinates(&self, row: usize) -> Vec<f64> {
        let mut rest = row;
        let mut coords = vec![0.0; self.axes.len()];
        for (k, (_, values)) in self.axes.iter().enumerate().rev() {
            coords[k] = values[rest % values.len()];
            rest /= values.len();
        }
        coords
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let join = |parts: Vec<&str>| parts.join("/");
        writeln!(out, "{FORMAT_TAG}")?;
        writeln!(
            out,
            "# metric={}",
            join(self.columns.iter().map(|c| c.metric.name()).collect())
        )?;
        writeln!(
            out,
            "# units={}",
            join(self.columns.iter().map(|c| c.metric.units()).collect())
        )?;
        match self.convention {
            Some(c) => writeln!(out, "# convention={}", c.name())?,
            None => writeln!(out, "# convention=none")?,
        }
        if let Some(unit) = &self.time_unit {
            writeln!(out, "# time_unit={unit}")?;
        }

        let mut header: Vec<&str> = self.axes.iter().map(|(n, _)| n.as_str()).collect();
        if self.columns.len() == 1 {
            header.push("value");
        } else {
            header.extend(self.columns.iter().map(|c| c.metric.name()));
        }
        writeln!(out, "{}", header.join(","))?;

        for row in 0..self.row_count() {
            let mut fields: Vec<String> = self
                .coordinates(row)
                .into_iter()
                .map(format_float)
                .collect();
            fields.extend(
                self.columns
                    .iter()
                    .map(|c| c.values[row].map(format_float).unwrap_or_default()),
            );
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_float(value: f64) -> String {
    format!("{value:e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> Table {
        let mut t = Table::new(vec![
            ("length_m".into(), vec![1e-7, 1e-6]),
            ("voltage_v".into(), vec![0.1, 1.0, 10.0]),
        ]);
        t.push_column(
            Metric::TChar,
            vec![
                None,
                Some(1.5e-9),
                Some(2.0e-10),
                None,
                Some(1e-9),
                Some(3e-11),
            ],
        );
        t
    }

    #[test]
    fn layout() {
        let csv = sample().to_csv_string();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "# nemsqueeze v1");
        assert_eq!(lines[1], "# metric=t_char");
        assert_eq!(lines[2], "# units=s");
        assert_eq!(lines[3], "# convention=none");
        assert_eq!(lines[4], "length_m,voltage_v,value");
        assert_eq!(lines[5], "1e-7,1e-1,");
        assert_eq!(lines[6], "1e-7,1e0,1.5e-9");
        assert_eq!(lines[8], "1e-6,1e-1,");
        assert_eq!(lines.len(), 11);
    }

    #[test]
    fn multi_column_header() {
        let mut t = Table::new(vec![("time_tc".into(), vec![0.0, 1.0])]);
        t.push_column(Metric::Dx1Ratio, vec![Some(1.0), Some(0.5)]);
        t.push_column(Metric::Dx2Ratio, vec![Some(1.0), Some(2.0)]);
        t.time_unit = Some("t_c".into());
        let csv = t.to_csv_string();
        assert!(csv.contains("# metric=dx1_ratio/dx2_ratio\n"));
        assert!(csv.contains("# time_unit=t_c\n"));
        assert!(csv.contains("time_tc,dx1_ratio,dx2_ratio\n0e0,1e0,1e0\n1e0,5e-1,2e0\n"));
    }

    #[test]
    fn repeat_writes_identical() {
        assert_eq!(sample().to_csv_string(), sample().to_csv_string());
    }

    proptest! {
        #[test]
        fn floats_round_trip(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let parsed: f64 = format_float(x).parse().unwrap();
            prop_assert_eq!(parsed.to_bits(), x.to_bits());
        }
    }
}
