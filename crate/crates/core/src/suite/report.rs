//! Run reports in JSON, CSV and markdown.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Status, SuiteConfig, Verdict};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(Error::Config(format!("unknown report format `{other}` (json, csv, md)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub run_id: String,
    pub config: SuiteConfig,
    pub results: Vec<Verdict>,
}

impl Report {
    /// The run id hashes the configuration and the requested grid points,
    /// so repeated runs of the same request share it.
    pub fn new(config: SuiteConfig, results: Vec<Verdict>) -> Self {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(&config).expect("config serializes"));
        for v in &results {
            h.update(v.id.as_bytes());
            h.update(serde_json::to_vec(&v.params).expect("params serialize"));
        }
        let digest = h.finalize();
        let run_id = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
        Report { run_id, config, results }
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|v| v.status == status).count()
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self).expect("report serializes") + "\n"),
            Format::Csv => self.csv(),
            Format::Md => Ok(self.markdown()),
        }
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
        w.write_record(["id", "params", "lhs", "rhs", "abs_diff", "budget", "status", "instance", "note"])
            .map_err(io)?;
        for v in &self.results {
            w.write_record([
                v.id.clone(),
                params_str(v),
                num(v.lhs),
                num(v.rhs),
                num(v.abs_diff),
                num(v.budget),
                v.status.as_str().to_string(),
                v.instance.clone(),
                v.note.clone().unwrap_or_default(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Identity run `{}`\n", self.run_id);
        let _ = writeln!(
            s,
            "{} instances: {} pass, {} fail, {} out of domain, {} budget not met\n",
            self.results.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::OutOfDomain),
            self.count(Status::BudgetNotMet),
        );
        s.push_str("| id | params | lhs | rhs | abs_diff | budget | status | note |\n");
        s.push_str("|---|---|---|---|---|---|---|---|\n");
        for v in &self.results {
            let note = v.note.as_deref().unwrap_or("").replace('|', "\\|");
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                v.id,
                params_str(v),
                num(v.lhs),
                num(v.rhs),
                num(v.abs_diff),
                num(v.budget),
                v.status.as_str(),
                note
            );
        }
        s
    }
}

fn params_str(v: &Verdict) -> String {
    v.params.iter().map(|(k, x)| format!("{k}={x}")).collect::<Vec<_>>().join(" ")
}

fn num(x: Option<f64>) -> String {
    x.map(|x| format!("{x:.17e}")).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::Params;

    fn verdict(status: Status) -> Verdict {
        Verdict {
            id: "stuffle".into(),
            params: Params::from([("a".into(), 2), ("b".into(), 3)]),
            instance: "zeta(2)*zeta(3) = zeta(5) + zeta(2,3) + zeta(3,2)".into(),
            lhs: Some(1.977_304_350_297_296),
            rhs: Some(1.977_304_350_297_296),
            abs_diff: Some(0.0),
            budget: Some(1e-9),
            status,
            note: None,
        }
    }

    #[test]
    fn formats() {
        let r = Report::new(SuiteConfig::default(), vec![verdict(Status::Pass), verdict(Status::Fail)]);
        let json: serde_json::Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json["results"][1]["status"], "FAIL");
        assert_eq!(json["results"][0]["params"]["a"], 2);
        assert_eq!(json["run_id"].as_str().unwrap().len(), 16);
        let csv = r.render(Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("\"zeta(2)*zeta(3) = zeta(5) + zeta(2,3) + zeta(3,2)\""));
        let md = r.render(Format::Md).unwrap();
        assert!(md.contains("1 pass, 1 fail"));
        assert_eq!("markdown".parse::<Format>().unwrap(), Format::Md);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn run_id_is_stable() {
        let a = Report::new(SuiteConfig::default(), vec![verdict(Status::Pass)]);
        let b = Report::new(SuiteConfig::default(), vec![verdict(Status::Pass)]);
        assert_eq!(a.render(Format::Json).unwrap(), b.render(Format::Json).unwrap());
        let cfg = SuiteConfig { slack: 1e-8, ..SuiteConfig::default() };
        assert_ne!(Report::new(cfg, vec![verdict(Status::Pass)]).run_id, a.run_id);
    }
}
