//! Structured output: `key = value` blocks, or one JSON document with `--machine`.

use std::fmt::Display;

use serde_json::{json, Map, Value};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Block {
    /// Rendered as `[title]`; an empty title renders the entries bare.
    pub title: String,
    pub entries: Vec<(String, String)>,
}

impl Block {
    pub fn new(title: impl Into<String>) -> Block {
        Block { title: title.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Block {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub blocks: Vec<Block>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.into(), blocks: Vec::new() }
    }

    pub fn add(&mut self, block: Block) {
        self.blocks.push(block);
    }

    pub fn block(&self, title: &str) -> Option<&Block> {
        self.blocks.iter().find(|b| b.title == title)
    }

    /// The header is a comment, so `build` output is itself a definition file.
    pub fn to_text(&self) -> String {
        let mut out = format!("# quasialg report {REPORT_VERSION}\n# command = {}\n", self.command);
        for b in &self.blocks {
            out.push('\n');
            if !b.title.is_empty() {
                out.push_str(&format!("[{}]\n", b.title));
            }
            for (k, v) in &b.entries {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let blocks: Vec<Value> = self
            .blocks
            .iter()
            .map(|b| {
                let entries: Map<String, Value> = b.entries.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                json!({ "title": b.title, "entries": entries })
            })
            .collect();
        let doc = json!({ "report_version": REPORT_VERSION, "command": self.command, "blocks": blocks });
        let mut s = serde_json::to_string_pretty(&doc).expect("json");
        s.push('\n');
        s
    }
}
