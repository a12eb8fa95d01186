//! Plain-text reports. Everything here is a pure function of the inputs: no timings,
//! no paths beyond the command echo, fixed orderings.

use std::fmt::Write as _;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, header: &[&str]) -> Self {
        Table { title: title.into(), header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let n = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate().take(n) {
                widths[i] = widths[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            format!("  {}", padded.join("  "))
        };
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(out, "{}", line(&self.header));
        for r in &self.rows {
            let _ = writeln!(out, "{}", line(r));
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    /// (key, value) lines printed under the command echo.
    pub settings: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
    /// Free text sections, e.g. an emitted presentation.
    pub blocks: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report { command, ..Default::default() }
    }

    pub fn setting(&mut self, key: &str, value: impl ToString) {
        self.settings.push((key.into(), value.to_string()));
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn block(&mut self, title: &str, text: impl Into<String>) {
        self.blocks.push((title.into(), text.into()));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "sweedler {}", self.command);
        for (k, v) in &self.settings {
            let _ = writeln!(out, "{k}: {v}");
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks\n");
            for c in &self.checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(out, "  {verdict}  {}", c.name);
                } else {
                    let _ = writeln!(out, "  {verdict}  {}: {}", c.name, c.detail);
                }
            }
        }
        for t in &self.tables {
            out.push('\n');
            t.render(&mut out);
        }
        for (title, text) in &self.blocks {
            let _ = writeln!(out, "\n{title}");
            for l in text.lines() {
                let _ = writeln!(out, "  {l}");
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let verdict = if failed == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "\nresult: {verdict} ({} of {} checks passed)", self.checks.len() - failed, self.checks.len());
        out
    }
}
