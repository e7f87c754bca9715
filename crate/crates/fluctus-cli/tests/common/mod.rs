//! Shared test plumbing: run the binary, load shipped schemas, and a
//! validator for the JSON-Schema subset those schemas use (type,
//! properties, required, additionalProperties, items, enum, const,
//! numeric bounds, minItems, minLength).

#![allow(dead_code)]

use std::process::{Command, Output};

use serde_json::Value;

pub fn fluctus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fluctus"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_json(args: &[&str]) -> Value {
    let out = fluctus(args);
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

pub fn schema(name: &str) -> Value {
    let path = format!(
        "{}/schemas/{name}.schema.json",
        env!("CARGO_MANIFEST_DIR")
    );
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema readable"))
        .expect("schema parses")
}

pub fn assert_valid(schema: &Value, instance: &Value) {
    if let Err(message) = validate_at(schema, instance, "$") {
        panic!("schema violation: {message}\ninstance: {instance:#}");
    }
}

fn validate_at(schema: &Value, instance: &Value, path: &str) -> Result<(), String> {
    let rules = schema
        .as_object()
        .ok_or_else(|| format!("{path}: schema node must be an object"))?;

    if let Some(ty) = rules.get("type") {
        let allowed: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(names) => names.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: malformed type keyword")),
        };
        if !allowed.iter().any(|t| matches_type(t, instance)) {
            return Err(format!(
                "{path}: expected type {allowed:?}, got {}",
                type_name(instance)
            ));
        }
    }
    if let Some(options) = rules.get("enum").and_then(Value::as_array) {
        if !options.contains(instance) {
            return Err(format!("{path}: {instance} not in enum {options:?}"));
        }
    }
    if let Some(expected) = rules.get("const") {
        if expected != instance {
            return Err(format!("{path}: expected const {expected}, got {instance}"));
        }
    }

    if let Some(x) = instance.as_f64() {
        if let Some(m) = rules.get("minimum").and_then(Value::as_f64) {
            if x < m {
                return Err(format!("{path}: {x} below minimum {m}"));
            }
        }
        if let Some(m) = rules.get("exclusiveMinimum").and_then(Value::as_f64) {
            if x <= m {
                return Err(format!("{path}: {x} not above {m}"));
            }
        }
        if let Some(m) = rules.get("maximum").and_then(Value::as_f64) {
            if x > m {
                return Err(format!("{path}: {x} above maximum {m}"));
            }
        }
        if let Some(m) = rules.get("exclusiveMaximum").and_then(Value::as_f64) {
            if x >= m {
                return Err(format!("{path}: {x} not below {m}"));
            }
        }
    }

    if let Some(s) = instance.as_str() {
        if let Some(min) = rules.get("minLength").and_then(Value::as_u64) {
            if (s.chars().count() as u64) < min {
                return Err(format!("{path}: string shorter than {min}"));
            }
        }
    }

    if let Some(items) = instance.as_array() {
        if let Some(min) = rules.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(item_schema) = rules.get("items") {
            for (i, item) in items.iter().enumerate() {
                validate_at(item_schema, item, &format!("{path}[{i}]"))?;
            }
        }
    }

    if let Some(map) = instance.as_object() {
        if let Some(required) = rules.get("required").and_then(Value::as_array) {
            for name in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(name) {
                    return Err(format!("{path}: missing required property {name:?}"));
                }
            }
        }
        let properties = rules.get("properties").and_then(Value::as_object);
        let closed = rules.get("additionalProperties") == Some(&Value::Bool(false));
        for (name, value) in map {
            match properties.and_then(|p| p.get(name)) {
                Some(sub) => validate_at(sub, value, &format!("{path}.{name}"))?,
                None if closed => {
                    return Err(format!("{path}: unexpected property {name:?}"));
                }
                None => {}
            }
        }
    }

    Ok(())
}

fn matches_type(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.as_i64().is_some() || v.as_u64().is_some(),
        _ => false,
    }
}

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}
