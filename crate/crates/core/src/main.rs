use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qhopf::expr::{parse_element, EngineConfig};
use qhopf::render::{render, Format, Renderable};
use qhopf::suite::{self, SuiteOptions};
use qhopf::{freealg::lower, Engine, Error, Mode, ShuffleElement};

#[derive(Parser)]
#[command(name = "qhopf", version, about = "Exact coproducts, quantum shuffles and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Free,
    G2,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Latex,
    Json,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, value_enum, default_value = "free")]
    mode: ModeArg,
    /// Number of generators (free mode).
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, value_enum, env = "QHOPF_FORMAT", default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coproduct of an element of G<X>.
    Coproduct {
        #[arg(long)]
        element: String,
        #[command(flatten)]
        common: Common,
    },
    /// Shuffle product of two elements of k<X>, read as comonomial combinations.
    Shuffle {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        common: Common,
    },
    /// The shuffle image of an element of k<X>.
    Omega {
        #[arg(long)]
        element: String,
        #[command(flatten)]
        common: Common,
    },
    /// Check a named identity, or all of them.
    Verify {
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long, default_value_t = 6)]
        max_n: u32,
        #[arg(long, value_enum, env = "QHOPF_FORMAT", default_value = "text")]
        format: FormatArg,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

impl Common {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            n: self.n,
            mode: match self.mode {
                ModeArg::Free => Mode::Free,
                ModeArg::G2 => Mode::G2,
            },
            format: self.format.into(),
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Latex => Format::Latex,
            FormatArg::Json => Format::Json,
        }
    }
}

fn free_shuffle(text: &str, e: &Engine) -> qhopf::Result<ShuffleElement> {
    let a = parse_element(text, e)?;
    let f = lower(&a).ok_or_else(|| Error::Eval(format!("{text:?} contains group elements")))?;
    Ok(ShuffleElement::from_linear(f))
}

fn run(cli: Cli) -> qhopf::Result<bool> {
    match cli.command {
        Command::Coproduct { element, common } => {
            let cfg = common.config();
            let e = cfg.engine()?;
            let a = parse_element(&element, &e)?;
            println!("{}", render(Renderable::Tensor(&e.coproduct(&a)), cfg.format));
        }
        Command::Shuffle { left, right, common } => {
            let cfg = common.config();
            let e = cfg.engine()?;
            let p = e.shuffle_product(&free_shuffle(&left, &e)?, &free_shuffle(&right, &e)?);
            println!("{}", render(Renderable::Shuffle(&p), cfg.format));
        }
        Command::Omega { element, common } => {
            let cfg = common.config();
            let e = cfg.engine()?;
            let a = free_shuffle(&element, &e)?;
            println!("{}", render(Renderable::Shuffle(&e.omega(a.as_linear())), cfg.format));
        }
        Command::Verify { identity, max_n, format, corrupt } => {
            let opts = SuiteOptions { max_n, corrupt, ..SuiteOptions::default() };
            let reports = suite::run(&identity, &opts)?;
            println!("{}", render(Renderable::Reports(&reports), format.into()));
            return Ok(reports.iter().all(|r| r.passed()));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
