use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA: u64 = 1;

/// What a subcommand produced: a JSON body, its text rendering and the exit
/// code.
pub struct Report {
    pub command: &'static str,
    pub body: Map<String, Value>,
    pub text: String,
    pub exit: u8,
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report {
            command,
            body: Map::new(),
            text: String::new(),
            exit: 0,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> anyhow::Result<()> {
        self.body.insert(key.to_string(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn to_json(&self) -> String {
        let mut doc = self.body.clone();
        doc.insert("schema".into(), SCHEMA.into());
        doc.insert("command".into(), self.command.into());
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    pub fn emit(&self, json: bool) {
        if json {
            print!("{}", self.to_json());
        } else {
            print!("{}", self.text);
        }
    }
}

pub fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
