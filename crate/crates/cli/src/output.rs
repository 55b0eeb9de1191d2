//! Deterministic output: aligned text by default, one JSON object per line
//! with `--format=json-lines`. Every number printed is an exact rational.

use clap::ValueEnum;
use graphweights::graph::{class_name, ExtGraph, GraphChain};
use graphweights::{fmt_rat, Rat};

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    #[value(name = "json-lines")]
    JsonLines,
}

pub struct Line {
    pub kind: &'static str,
    pub fields: Vec<(&'static str, String)>,
    failure: bool,
}

impl Line {
    pub fn kv(key: &'static str, value: &str) -> Line {
        Line { kind: key, fields: vec![("value", value.to_string())], failure: false }
    }

    pub fn weight(diagram: &str, value: &str) -> Line {
        Line {
            kind: "weight",
            fields: vec![("diagram", diagram.to_string()), ("value", value.to_string())],
            failure: false,
        }
    }

    pub fn tensor(diagram: &str, value: &str) -> Line {
        Line {
            kind: "tensor",
            fields: vec![
                ("diagram", diagram.to_string()),
                ("value", value.replace('\n', " + ")),
            ],
            failure: false,
        }
    }

    pub fn graph(g: &ExtGraph) -> Line {
        Line { kind: "graph", fields: vec![("value", g.to_string())], failure: false }
    }

    pub fn term(coeff: &str, class: &str) -> Line {
        Line {
            kind: "term",
            fields: vec![("coeff", coeff.to_string()), ("class", class.to_string())],
            failure: false,
        }
    }

    pub fn check(name: &str, pass: bool, detail: Option<String>) -> Line {
        let mut fields = vec![
            ("name", name.to_string()),
            ("status", if pass { "pass" } else { "fail" }.to_string()),
        ];
        if let Some(d) = detail {
            fields.push(("detail", d));
        }
        Line { kind: "check", fields, failure: !pass }
    }

    pub fn is_failure(&self) -> bool {
        self.failure
    }
}

/// Boundary and weight chains as one line per class, reference names where
/// available; `0` for the empty chain.
pub fn chain_lines(chain: &GraphChain<Rat>) -> Vec<Line> {
    if chain.is_zero() {
        return vec![Line::kv("chain", "0")];
    }
    chain
        .terms()
        .map(|(class, c)| {
            let name = class_name(class)
                .map(str::to_string)
                .unwrap_or_else(|| class.graph().to_string());
            Line::term(&fmt_rat(c), &name)
        })
        .collect()
}

pub fn emit(lines: &[Line], format: Format) {
    match format {
        Format::Text => {
            for l in lines {
                match l.kind {
                    "term" => {
                        println!("{} * {}", l.fields[0].1, l.fields[1].1);
                    }
                    "check" => {
                        let name = &l.fields[0].1;
                        let status = &l.fields[1].1;
                        print!("{status:>4}  {name}");
                        if let Some((_, d)) = l.fields.get(2) {
                            print!("  ({d})");
                        }
                        println!();
                    }
                    "weight" | "tensor" => {
                        println!("{:<28} {}", l.fields[0].1, l.fields[1].1);
                    }
                    _ => {
                        println!("{}: {}", l.kind, l.fields[0].1);
                    }
                }
            }
        }
        Format::JsonLines => {
            for l in lines {
                let mut obj = serde_json::Map::new();
                obj.insert("kind".into(), serde_json::Value::String(l.kind.to_string()));
                for (k, v) in &l.fields {
                    obj.insert((*k).into(), serde_json::Value::String(v.clone()));
                }
                println!("{}", serde_json::Value::Object(obj));
            }
        }
    }
}

