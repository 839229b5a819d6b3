//! Ordered reports rendered as plain text or as `key: value` lines.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

enum Item {
    Field {
        key: &'static str,
        label: &'static str,
        value: String,
    },
    Block {
        label: &'static str,
        body: String,
    },
}

#[derive(Default)]
pub struct Report {
    items: Vec<Item>,
}

impl Report {
    pub fn field(&mut self, key: &'static str, label: &'static str, value: impl ToString) {
        self.items.push(Item::Field {
            key,
            label,
            value: value.to_string(),
        });
    }

    /// A multi-line block, already in `key: value` form.
    pub fn block(&mut self, label: &'static str, body: String) {
        self.items.push(Item::Block { label, body });
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for item in &self.items {
            match (item, format) {
                (Item::Field { label, value, .. }, Format::Text) => {
                    out += &format!("{label}: {value}\n");
                }
                (Item::Field { key, value, .. }, Format::Machine) => {
                    out += &format!("{key}: {value}\n");
                }
                (Item::Block { label, body }, Format::Text) => {
                    out += &format!("{label}:\n");
                    for l in body.lines() {
                        out += &format!("  {l}\n");
                    }
                }
                (Item::Block { body, .. }, Format::Machine) => out += body,
            }
        }
        out
    }
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
