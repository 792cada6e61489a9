use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        Value::Object(_) => serde_json::to_string(v).expect("JSON values serialize"),
        other => other.to_string(),
    }
}

fn is_record_list(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

/// Rows of objects as aligned columns; keys of the first row form the
/// header, with `name` leading when present.
fn records(items: &[Value], out: &mut Vec<String>) {
    let mut keys: Vec<&String> = items[0]
        .as_object()
        .expect("record")
        .iter()
        .filter(|(_, v)| !is_record_list(v))
        .map(|(k, _)| k)
        .collect();
    keys.sort_by_key(|k| k.as_str() != "name");
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            keys.iter()
                .map(|k| item.get(k.as_str()).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = keys
        .iter()
        .enumerate()
        .map(|(i, k)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([k.chars().count()])
                .max()
                .unwrap()
        })
        .collect();
    let line = |row: Vec<&str>| {
        row.iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    out.push(line(keys.iter().map(|k| k.as_str()).collect()));
    for r in &cells {
        out.push(line(r.iter().map(String::as_str).collect()));
    }
}

/// Plain-text rendering: scalar fields as an aligned `key  value` list,
/// then each list of records as its own table.
pub fn table(v: &Value) -> String {
    let Value::Object(map) = v else {
        return scalar(v);
    };
    let mut out = Vec::new();
    let plain: Vec<(&String, &Value)> = map.iter().filter(|(_, x)| !is_record_list(x)).collect();
    let width = plain
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    for (k, x) in &plain {
        let text = match x {
            Value::Object(o) if o.contains_key("display") => scalar(&o["display"]),
            _ => scalar(x),
        };
        out.push(format!("{k:<width$}  {text}"));
    }
    for (k, x) in map.iter().filter(|(_, x)| is_record_list(x)) {
        out.push(String::new());
        out.push(format!("{k}:"));
        records(x.as_array().expect("list"), &mut out);
    }
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligns_scalars_and_records() {
        let v = json!({
            "points": 5,
            "coefficients": [1, 0, 6, 0, 1],
            "checks": [{"name": "a", "status": "pass"}, {"name": "long name", "status": "fail"}]
        });
        let t = table(&v);
        assert_eq!(
            t,
            "coefficients  1 0 6 0 1\npoints        5\n\nchecks:\nname       status\na          pass\nlong name  fail"
        );
    }
}
