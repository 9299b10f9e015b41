//! Plain-text rendering of a JSON document: nested keys indent, lists of
//! scalars stay on one line, strings print unquoted.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(scalar).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn write(out: &mut String, depth: usize, key: Option<&str>, v: &Value) {
    let pad = "  ".repeat(depth);
    let head = |out: &mut String| {
        if let Some(k) = key {
            out.push_str(&format!("{pad}{k}:\n"));
        }
    };
    let inner = depth + usize::from(key.is_some());
    if let Some(s) = scalar(v) {
        match key {
            Some(k) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => out.push_str(&format!("{pad}{s}\n")),
        }
        return;
    }
    match v {
        Value::Object(map) => {
            head(out);
            for (k, child) in map {
                write(out, inner, Some(k), child);
            }
        }
        Value::Array(items) => {
            head(out);
            let bullet = "  ".repeat(inner);
            for item in items {
                let mut block = String::new();
                write(&mut block, inner + 1, None, item);
                // first line of each item gets a dash in place of its indent
                let cut = bullet.len() + 2;
                out.push_str(&format!("{bullet}- {}", &block[cut.min(block.len())..]));
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write(&mut out, 0, None, v);
    out
}
