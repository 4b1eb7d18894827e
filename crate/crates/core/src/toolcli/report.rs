use crate::verdict::{Status, Verdict};

/// Exit codes of the command surface.
pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Holds | Status::Consistent => EXIT_HOLDS,
        Status::Violated | Status::Refuted => EXIT_VIOLATED,
        Status::Error => EXIT_INPUT,
    }
}

/// Human-readable lines followed by a `key=value` block.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub command: String,
    pub human: Vec<String>,
    pub machine: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), ..Default::default() }
    }

    pub fn say(&mut self, line: impl Into<String>) {
        self.human.push(line.into());
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) {
        self.machine.push((key.into(), value.to_string()));
    }

    /// Records a verdict under `prefix` in both blocks.
    pub fn verdict(&mut self, prefix: &str, v: &Verdict) {
        self.say(format!("{prefix}: {v}"));
        for w in &v.warnings {
            self.say(format!("  warning: {w}"));
        }
        for line in v.machine_lines(&format!("{prefix}.")) {
            let (k, val) = line.split_once('=').expect("machine line");
            self.set(k, val);
        }
    }

    pub fn machine_block(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.machine {
            out.push_str(&format!("{k}={v}\n"));
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = format!("== {} ==\n", self.command);
        for l in &self.human {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str("-- machine --\n");
        out.push_str(&self.machine_block());
        out
    }

    /// Value of a machine key.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}
