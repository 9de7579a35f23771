//! Byte-stable JSON rendering for reports.
//!
//! Reports are contractually deterministic: same input and flags, same
//! bytes. Serialization routes through `serde_json::Value` so object keys
//! come out sorted (the default map is ordered), and floats are printed with
//! 17 significant digits in scientific notation, enough to round-trip every
//! f64 exactly.

use std::io;

use anyhow::Result;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

struct StableFormatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for StableFormatter<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.inner.end_object_value(writer)
    }
}

/// Render any serializable value as stable, pretty-printed JSON.
pub fn to_stable_json<T: Serialize>(value: &T) -> Result<String> {
    let value = serde_json::to_value(value)?;
    let mut buf = Vec::new();
    let formatter = StableFormatter { inner: PrettyFormatter::new() };
    let mut serializer = serde_json::Serializer::with_formatter(&mut buf, formatter);
    value.serialize(&mut serializer)?;
    Ok(String::from_utf8(buf)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_render_with_seventeen_significant_digits() {
        let doc = json!({ "phi": 0.25, "count": 3 });
        let text = to_stable_json(&doc).unwrap();
        assert!(text.contains("\"phi\": 2.5000000000000000e-1"), "{text}");
        assert!(text.contains("\"count\": 3"), "{text}");
    }

    #[test]
    fn keys_are_sorted_regardless_of_insertion_order() {
        let doc = json!({ "zeta": 1, "alpha": 2, "mid": 3 });
        let text = to_stable_json(&doc).unwrap();
        let alpha = text.find("alpha").unwrap();
        let mid = text.find("mid").unwrap();
        let zeta = text.find("zeta").unwrap();
        assert!(alpha < mid && mid < zeta);
    }

    #[test]
    fn rendered_floats_round_trip() {
        for v in [0.1, 2.0 - std::f64::consts::SQRT_2, 1.0 / 3.0, 1e-300, 12345.6789] {
            let text = to_stable_json(&json!({ "v": v })).unwrap();
            let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert_eq!(parsed["v"].as_f64().unwrap(), v);
        }
    }
}
