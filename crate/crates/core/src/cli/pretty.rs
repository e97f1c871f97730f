use serde_json::Value;

/// Indented plain-text rendering of a JSON value. Scalar arrays stay on one
/// line; object keys come out sorted.
pub fn render_pretty(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

/// One-line form of an array of scalars.
fn inline(v: &Value) -> Option<String> {
    let a = v.as_array()?;
    a.iter().all(is_scalar).then(|| format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")))
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    x if inline(x).is_some() => out.push_str(&format!("{pad}{k}: {}\n", inline(x).unwrap())),
                    x if is_scalar(x) => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                    x => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_scalar(x) {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                } else if let Some(line) = inline(x) {
                    out.push_str(&format!("{pad}- {line}\n"));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", scalar(x))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_values() {
        let v = json!({"status": "pass", "dims": [1, 2], "rows": [{"k": 0}, [3, 4]], "detail": null});
        assert_eq!(render_pretty(&v), "detail: -\ndims: [1, 2]\nrows:\n  -\n    k: 0\n  - [3, 4]\nstatus: pass\n");
    }
}
