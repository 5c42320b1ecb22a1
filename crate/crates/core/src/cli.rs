//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for invalid input or usage, 2 when the file
//! system fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::align::align;
use crate::audio::{synth_utterance, write_wav};
use crate::error::{Error, Result};
use crate::fsutil::write_atomic;
use crate::phone::{parse_script, Utterance};
use crate::pipeline::{generate_feedback, FeedbackSettings, SVG_FILE, WAV_FILE};
use crate::prosody::{plan, ExaggerationConfig, ExaggerationLevel};
use crate::studykit::{self, PairList, ResponseSheet, StudyManifest};
use crate::svg::{render_animation, RenderMode, RenderSpec};
use crate::viseme::{build_keyframes, VisemeTable};

#[derive(Debug, Parser)]
#[command(name = "visespeech", version, about = "Exaggerated audio-visual pronunciation feedback")]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a phone script and print it normalized.
    Parse { script: PathBuf },
    /// Align a learner's phones against the reference.
    Diagnose(Pair),
    /// Print the timing and prosody plan of a script.
    Plan {
        script: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Synthesize a script to `<out>/out.wav`.
    SynthAudio {
        script: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Animate a script to `<out>/out.svg`.
    SynthVisual {
        script: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        visual: Visual,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Diagnose, then write a full feedback bundle.
    Feedback {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        visual: Visual,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Identification study material.
    #[command(subcommand)]
    Studykit(Study),
}

#[derive(Debug, Subcommand)]
enum Study {
    /// Render a questionnaire from a JSON list of word pairs.
    Gen {
        pairs: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tuning: Tuning,
        #[command(flatten)]
        visual: Visual,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Score a response sheet against a study manifest.
    Score { manifest: PathBuf, responses: PathBuf },
}

#[derive(Debug, Args)]
struct Pair {
    /// Reference phone script.
    #[arg(long = "ref")]
    reference: PathBuf,
    /// Learner phone script.
    #[arg(long)]
    hyp: PathBuf,
}

#[derive(Debug, Args)]
struct Tuning {
    #[arg(long, default_value_t = ExaggerationLevel::Medium)]
    level: ExaggerationLevel,
    /// Exaggeration config file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Visual {
    /// Viseme pose table.
    #[arg(long)]
    visemes: Option<PathBuf>,
    #[arg(long, default_value_t = 60)]
    fps: u32,
    #[arg(long, value_enum, default_value_t = Mode::Smil)]
    mode: Mode,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Smil,
    Frames,
}

/// Runs the CLI on real stdio.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the CLI with the given output streams and returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_io() {
                2
            } else {
                1
            }
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(Error::file(path))
}

fn read_script(path: &Path) -> Result<Utterance> {
    parse_script(&read_text(path)?).map_err(|source| Error::Phone {
        path: path.to_path_buf(),
        source,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn load_config(t: &Tuning) -> Result<ExaggerationConfig> {
    Ok(match &t.config {
        Some(p) => ExaggerationConfig::load(p)?,
        None => ExaggerationConfig::default(),
    })
}

fn settings(t: &Tuning, v: &Visual) -> Result<FeedbackSettings> {
    let mode = match v.mode {
        Mode::Smil => RenderMode::SmilAnimated,
        Mode::Frames => RenderMode::FrameSampled,
    };
    Ok(FeedbackSettings {
        config: load_config(t)?,
        visemes: match &v.visemes {
            Some(p) => VisemeTable::load(p)?,
            None => VisemeTable::default(),
        },
        render: RenderSpec::new(400, 300, v.fps, mode)?,
        ..FeedbackSettings::default()
    })
}

fn emit<T: Serialize>(out: &mut dyn Write, json: bool, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    if json {
        let s = serde_json::to_string_pretty(value).expect("output serializes");
        writeln!(out, "{s}")?;
    } else {
        write!(out, "{}", text())?;
    }
    Ok(())
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(Error::file(dir))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let json = cli.json;
    match cli.command {
        Command::Parse { script } => {
            let u = read_script(&script)?;
            emit(out, json, &u, || format!("{u}\n"))
        }
        Command::Diagnose(pair) => {
            let (r, h) = (read_script(&pair.reference)?, read_script(&pair.hyp)?);
            let d = align(&r, &h);
            emit(out, json, &d, || {
                let mut s = format!("cost {}\n", d.cost);
                for &i in &d.mispronounced_ref_indices {
                    s.push_str(&format!("ref {i} {}\n", r.phones()[i].symbol()));
                }
                s
            })
        }
        Command::Plan { script, tuning } => {
            let u = read_script(&script)?;
            let p = plan(&u, tuning.level, &load_config(&tuning)?);
            emit(out, json, &p, || {
                let mut s = String::new();
                for t in &p.timings {
                    s.push_str(&format!(
                        "{:<4} {:>9.3} {:>9.3} f0 x{} energy x{}{}\n",
                        t.phone.symbol(),
                        t.start_ms,
                        t.duration_ms,
                        t.f0_mult,
                        t.energy_mult,
                        if t.emphasized { " *" } else { "" }
                    ));
                }
                s.push_str(&format!("total {:.3} ms\n", p.total_ms));
                s
            })
        }
        Command::SynthAudio { script, tuning, out: dir } => {
            let u = read_script(&script)?;
            let cfg = load_config(&tuning)?;
            cfg.validate()?;
            let audio = synth_utterance(&plan(&u, tuning.level, &cfg), &cfg);
            create_dir(&dir)?;
            let path = dir.join(WAV_FILE);
            write_wav(&audio, &path).map_err(Error::file(&path))?;
            emit(out, json, &path, || format!("{}\n", path.display()))
        }
        Command::SynthVisual {
            script,
            tuning,
            visual,
            out: dir,
        } => {
            let u = read_script(&script)?;
            let s = settings(&tuning, &visual)?;
            s.config.validate()?;
            let p = plan(&u, tuning.level, &s.config);
            let track = build_keyframes(&u, &p, &s.config, &s.visemes, s.base_color)?;
            let doc = render_animation(&track, &s.render)?;
            create_dir(&dir)?;
            let path = dir.join(SVG_FILE);
            write_atomic(&path, doc.as_str().as_bytes()).map_err(Error::file(&path))?;
            emit(out, json, &path, || format!("{}\n", path.display()))
        }
        Command::Feedback {
            pair,
            tuning,
            visual,
            out: dir,
        } => {
            let (r, h) = (read_script(&pair.reference)?, read_script(&pair.hyp)?);
            let s = settings(&tuning, &visual)?;
            let bundle = generate_feedback(&r, &h, tuning.level, &s, &dir)?;
            emit(out, json, &bundle.manifest, || {
                format!(
                    "{}\n{}\n{}\n",
                    bundle.wav_path.display(),
                    bundle.svg_path.display(),
                    bundle.manifest_path.display()
                )
            })
        }
        Command::Studykit(Study::Gen {
            pairs,
            seed,
            tuning,
            visual,
            out: dir,
        }) => {
            let list: PairList = read_json(&pairs)?;
            let s = settings(&tuning, &visual)?;
            let m = studykit::generate(&list.pairs, seed, tuning.level, &s, &dir)?;
            emit(out, json, &m, || {
                format!(
                    "{} questions in {}\n",
                    m.questions.len(),
                    dir.join(studykit::STUDY_MANIFEST_FILE).display()
                )
            })
        }
        Command::Studykit(Study::Score { manifest, responses }) => {
            let m: StudyManifest = read_json(&manifest)?;
            let sheet: ResponseSheet = read_json(&responses)?;
            let r = studykit::score(&m, &sheet)?;
            emit(out, json, &r, || {
                format!(
                    "E {}/{} = {:.4}\nN {}/{} = {:.4}\n",
                    r.correct_e, r.total_e, r.accuracy_e, r.correct_n, r.total_n, r.accuracy_n
                )
            })
        }
    }
}
