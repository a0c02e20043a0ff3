//! Pass/fail verification reports shared by the table, cluster and
//! correspondence checkers.

use std::fmt;

#[derive(Clone, Debug)]
pub struct ReportItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            items: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.items.push(ReportItem {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn merge(&mut self, other: Report) {
        for item in other.items {
            self.items.push(ReportItem {
                name: format!("{}: {}", other.title, item.name),
                ..item
            });
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} [{}]",
            self.title,
            if self.pass() { "PASS" } else { "FAIL" }
        )?;
        for item in &self.items {
            let mark = if item.pass { "ok  " } else { "FAIL" };
            if item.detail.is_empty() {
                writeln!(f, "  {mark} {}", item.name)?;
            } else {
                writeln!(f, "  {mark} {} — {}", item.name, item.detail)?;
            }
        }
        Ok(())
    }
}
