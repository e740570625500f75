//! Plain-text rendering of a JSON report.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("none".into()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::String(_) | Value::Number(_))) => Some(format!(
            "{{{}}}",
            items.iter().map(|i| scalar(i).unwrap_or_default()).collect::<Vec<_>>().join(", ")
        )),
        _ => None,
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                match scalar(child) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(child, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        walk(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    walk(report, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_layout() {
        let v = json!({"holds": false, "witness": {"E": ["s1", "s2"], "sPrime": "s1"}, "list": [{"a": 1}]});
        assert_eq!(text(&v), "holds: false\nwitness:\n  E: {s1, s2}\n  sPrime: s1\nlist:\n  -\n    a: 1\n");
    }

    #[test]
    fn empty_list_renders_none() {
        assert_eq!(text(&json!({"G": []})), "G: none\n");
    }
}
