//! Deterministic command reports: inputs echoed, results as JSON, and a
//! Pass/Fail/Partial status that maps onto the process exit code.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: serde_json::Value,
    pub results: serde_json::Value,
    pub status: Status,
    /// Only populated when timing output is requested; omitted by default so
    /// repeated runs are byte-identical.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, inputs: serde_json::Value, results: serde_json::Value, status: Status) -> Self {
        Report { command: command.to_string(), inputs, results, status, elapsed_ms: None }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail | Status::Partial => 1,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Minimal textual rendering for --format plain.
    pub fn to_plain_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("status: {:?}\n", self.status));
        render_value("results", &self.results, 0, &mut out);
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed_ms: {ms}\n"));
        }
        out
    }
}

fn render_value(key: &str, v: &serde_json::Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        serde_json::Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, val) in map {
                render_value(k, val, depth + 1, out);
            }
        }
        serde_json::Value::Array(items) if items.len() > 8 => {
            out.push_str(&format!("{pad}{key}: [{} items]\n", items.len()));
        }
        other => {
            out.push_str(&format!("{pad}{key}: {other}\n"));
        }
    }
}
