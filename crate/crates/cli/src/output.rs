use std::io::Write;

use ris_nakagami::experiments::{Command, Table, Value};
use serde_json::json;

/// Shortest text that parses back to the same `f64`.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Float(x) => format_float(*x),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Empty => String::new(),
    }
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(table: &Table, command: Command, mut out: W) -> std::io::Result<()> {
    let rows: Vec<serde_json::Value> = table
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| match v {
                    Value::Float(x) => json!(x),
                    Value::Int(i) => json!(i),
                    Value::Bool(b) => json!(b),
                    Value::Empty => serde_json::Value::Null,
                })
                .collect()
        })
        .collect();
    let doc = json!({
        "command": command.as_str(),
        "columns": table.columns,
        "rows": rows,
    });
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [
            0.0,
            1.0,
            -2.5,
            1e-20,
            3.916838241e-13,
            123456.789,
            1e300,
            0.1 + 0.2,
        ] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(format_float(15.0), "15");
        assert_eq!(format_float(1e-20), "1e-20");
    }

    #[test]
    fn csv_layout() {
        let t = Table {
            columns: vec!["n", "x", "y"],
            rows: vec![vec![Value::Int(4), Value::Float(0.5), Value::Empty]],
        };
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,x,y\n4,0.5,\n");
    }

    #[test]
    fn json_layout() {
        let t = Table {
            columns: vec!["ok"],
            rows: vec![vec![Value::Bool(true)], vec![Value::Empty]],
        };
        let mut buf = Vec::new();
        write_json(&t, Command::OptimizeN, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["command"], "optimize-n");
        assert_eq!(v["rows"][0][0], true);
        assert!(v["rows"][1][0].is_null());
    }
}
