use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use salpeter_wigner::grid::WignerField;
use salpeter_wigner::report::VerificationReport;

use crate::config::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub config: RunConfig,
    #[serde(default)]
    pub fields: Vec<WignerField>,
    #[serde(default)]
    pub report: VerificationReport,
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// One row per grid point and time: `x,p,t,w,err,flag`.
pub fn write_csv(path: &Path, fields: &[WignerField]) -> anyhow::Result<()> {
    let mut out = csv::Writer::from_writer(create(path)?);
    out.write_record(["x", "p", "t", "w", "err", "flag"])?;
    for field in fields {
        let grid = field.grid();
        for (k, pt) in grid.points().enumerate() {
            out.write_record([
                format!("{:.16e}", pt.x),
                format!("{:.16e}", pt.p),
                format!("{:.16e}", pt.t),
                format!("{:.16e}", field.values()[k]),
                format!("{:.16e}", field.errors()[k]),
                u8::from(field.flags()[k]).to_string(),
            ])?;
        }
    }
    out.flush().with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_json(path: &Path, output: &RunOutput) -> anyhow::Result<()> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, output)?;
    out.write_all(b"\n")?;
    out.flush().with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Reads JSON written by [`write_json`], re-checking every field.
pub fn read_json(path: &Path) -> anyhow::Result<RunOutput> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let output: RunOutput =
        serde_json::from_reader(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))?;
    for f in &output.fields {
        WignerField::new(
            *f.grid(),
            f.method(),
            f.values().to_vec(),
            f.errors().to_vec(),
            f.flags().to_vec(),
        )?;
    }
    Ok(output)
}
