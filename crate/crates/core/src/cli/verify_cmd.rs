use std::path::PathBuf;

use clap::Args;

use super::{write_file, CliResult, ModelArgs};
use crate::verify::{self, VerifySettings, DEFAULT_SAMPLES, DEFAULT_SEED};

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of random energies.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// PRNG seed.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also write the text report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub(crate) fn run(args: &VerifyArgs) -> CliResult<i32> {
    let cfg = args.model.resolve()?;
    let settings = VerifySettings { samples: args.samples, seed: args.seed, ..Default::default() };
    let pool = args.model.pool()?;
    let report = pool.install(|| verify::run(&cfg, &settings));
    let text = report.to_string();
    println!("{text}");
    if let Some(path) = &args.out {
        write_file(path, &format!("{text}\n"))?;
    }
    Ok(report.exit_code())
}
