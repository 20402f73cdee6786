use std::collections::BTreeSet;

use serde_json::{Map, Value};

/// Pretty JSON with a trailing newline; object keys come out sorted because
/// `serde_json::Map` is ordered.
pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => serde_json::to_string(other).expect("values always serialize"),
    }
}

/// One CSV row per entry; the header is the sorted union of keys.
pub fn csv(rows: &[Map<String, Value>]) -> Result<String, String> {
    let headers: BTreeSet<&String> = rows.iter().flat_map(|r| r.keys()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers.iter().map(|h| h.as_str()))
        .map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record(headers.iter().map(|h| r.get(*h).map(cell).unwrap_or_default()))
            .map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_headers_are_sorted_union() {
        let rows = vec![
            json!({"b": 1, "a": [1, 2]}).as_object().unwrap().clone(),
            json!({"c": "x"}).as_object().unwrap().clone(),
        ];
        let out = csv(&rows).unwrap();
        assert_eq!(out, "a,b,c\n\"[1,2]\",1,\n,,x\n");
    }
}
