//! Flat result rows: one system per line in JSON, CSV or an aligned table.
//! Rationals travel as exact strings ("5/4", "inf") so round-trips are lossless.

use cohsys::formulas::{alpha_c, beta};
use cohsys::knowledge::conjecture::{conjecture_scan, Verdict};
use cohsys::types::SystemType;
use cohsys::{Classifier, Status};
use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str = "n,d,k,a,t,l,m,beta,alpha_c,status,lo,hi,citations,flags";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub n: i64,
    pub d: i64,
    pub k: i64,
    pub a: i64,
    pub t: i64,
    pub l: Option<i64>,
    pub m: Option<i64>,
    pub beta: i64,
    pub alpha_c: Option<String>,
    pub status: String,
    /// Certified nonempty window: the exact range for EXACT, the hull for
    /// PARTIAL, absent otherwise.
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub citations: Vec<String>,
    pub flags: Vec<String>,
}

impl ResultRecord {
    pub fn classify(cl: &Classifier, sys: &SystemType, with_scan: bool) -> ResultRecord {
        let know = cl.classify(sys);
        let (lo, hi) = match &know.status {
            Status::Exact(iv) => (Some(iv.lo.to_string()), Some(iv.hi.to_string())),
            Status::Partial => match &know.nonempty_hull {
                Some(h) => (Some(h.lo.to_string()), Some(h.hi.to_string())),
                None => (None, None),
            },
            _ => (None, None),
        };
        let mut flags = Vec::new();
        if with_scan {
            if let Ok(rep) = conjecture_scan(cl, sys) {
                flags.extend(rep.flags.iter().map(|s| s.to_string()));
                if rep.verdict == Verdict::Contradicted {
                    flags.push("contradicted".to_string());
                }
            }
        }
        ResultRecord {
            n: sys.n,
            d: sys.d,
            k: sys.k,
            a: sys.a,
            t: sys.t,
            l: sys.lm.map(|(l, _)| l),
            m: sys.lm.map(|(_, m)| m),
            beta: beta(sys.n, sys.d, sys.k),
            alpha_c: alpha_c(sys).ok().map(|r| r.to_string()),
            status: know.status.name().to_string(),
            lo,
            hi,
            citations: know.citations().iter().map(|s| s.to_string()).collect(),
            flags,
        }
    }

    pub fn to_csv_row(&self) -> String {
        let opt_num = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        let opt_str = |v: &Option<String>| v.clone().unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.d,
            self.k,
            self.a,
            self.t,
            opt_num(self.l),
            opt_num(self.m),
            self.beta,
            opt_str(&self.alpha_c),
            self.status,
            opt_str(&self.lo),
            opt_str(&self.hi),
            self.citations.join(";"),
            self.flags.join(";"),
        )
    }

    pub fn from_csv_row(line: &str) -> anyhow::Result<ResultRecord> {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 14 {
            anyhow::bail!("expected 14 columns, got {}", cols.len());
        }
        let int = |s: &str| -> anyhow::Result<i64> {
            s.parse().map_err(|_| anyhow::anyhow!("bad integer {s:?}"))
        };
        let opt_int =
            |s: &str| -> anyhow::Result<Option<i64>> { Ok(if s.is_empty() { None } else { Some(int(s)?) }) };
        let opt_str = |s: &str| if s.is_empty() { None } else { Some(s.to_string()) };
        let list = |s: &str| -> Vec<String> {
            if s.is_empty() {
                Vec::new()
            } else {
                s.split(';').map(str::to_string).collect()
            }
        };
        Ok(ResultRecord {
            n: int(cols[0])?,
            d: int(cols[1])?,
            k: int(cols[2])?,
            a: int(cols[3])?,
            t: int(cols[4])?,
            l: opt_int(cols[5])?,
            m: opt_int(cols[6])?,
            beta: int(cols[7])?,
            alpha_c: opt_str(cols[8]),
            status: cols[9].to_string(),
            lo: opt_str(cols[10]),
            hi: opt_str(cols[11]),
            citations: list(cols[12]),
            flags: list(cols[13]),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    fn range_cell(&self) -> String {
        match (&self.lo, &self.hi) {
            (Some(lo), Some(hi)) => format!("({lo}, {hi})"),
            _ => String::new(),
        }
    }
}

pub fn render_table(records: &[ResultRecord]) -> String {
    let header = ["n", "d", "k", "a", "t", "beta", "alpha_c", "status", "range", "citations", "flags"];
    let rows: Vec<[String; 11]> = records
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.d.to_string(),
                r.k.to_string(),
                r.a.to_string(),
                r.t.to_string(),
                r.beta.to_string(),
                r.alpha_c.clone().unwrap_or_default(),
                r.status.clone(),
                r.range_cell(),
                r.citations.join(";"),
                r.flags.join(";"),
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let fmt_row = |cells: &[String]| {
        cells
            .iter()
            .zip(width)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = fmt_row(&header.map(str::to_string));
    for row in rows {
        out.push('\n');
        out.push_str(&fmt_row(&row));
    }
    out
}
