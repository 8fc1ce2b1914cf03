//! `modhangul` command-line front end.
//!
//! Exit codes: 0 success, 1 error, 2 no rule matched (or unsplittable pinyin),
//! 64 bad command line.

use std::fs;
use std::io::{self, IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use modhangul::corpus::{format_report, parse_corpus, run_corpus, Status, SHIPPED_CORPUS};
use modhangul::glyph::synth::base_glyphs;
use modhangul::glyph::{
    build_atlas, build_atlas_from, find_target_consonant_stroke, find_target_vowel_stroke, load_glyph, render_text,
    Atlas, GlyphBitmap, Manifest, Operator, DEFAULT_MANIFEST,
};
use modhangul::jamo::{parse_tokens, serialize_tokens, to_display_text, DisplayPolicy, Transcript};
use modhangul::keyboard::{
    blocks_to_keystrokes, keystrokes_to_blocks, load_layout, parse_session_log, write_session_log, KeyboardLayout,
    DEFAULT_LAYOUT,
};
use modhangul::rules::{
    builtin_profile, builtin_ruleset_source, load_ruleset, transliterate, InputMode, PinyinError, Profile, RuleError,
    RuleSet, PROFILE_IDS,
};

const EXIT_NO_MATCH: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "modhangul", version, about = "Modified-Hangul transcription toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Transliterate text into modified-Hangul tokens.
    Transliterate(TransliterateArgs),
    /// Render token text to a PBM (or PNG) page.
    Render(RenderArgs),
    /// Find the target stroke of one glyph and modify it.
    GlyphModify(GlyphModifyArgs),
    /// Base glyph set.
    Glyphs {
        #[command(subcommand)]
        command: GlyphsCommand,
    },
    /// Glyph atlas.
    Atlas {
        #[command(subcommand)]
        command: AtlasCommand,
    },
    /// Replay a JSON-lines session log through the keyboard automaton.
    KeyboardSim(KeyboardSimArgs),
    /// Write the session log that types the given tokens.
    KeyboardLog(KeyboardLogArgs),
    /// Print the built-in keyboard layout.
    KeyboardLayout,
    /// Rule files.
    Rules {
        #[command(subcommand)]
        command: RulesCommand,
    },
    /// Example corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Display {
    Plain,
    Marked,
    Tokens,
}

#[derive(clap::Args)]
struct TransliterateArgs {
    /// Built-in profile id.
    #[arg(long, short)]
    profile: Option<String>,
    /// Rule file to use instead of a built-in profile.
    #[arg(long, conflicts_with = "profile")]
    rules: Option<PathBuf>,
    /// Option override, `name=value`.
    #[arg(long = "option", short = 'o', value_name = "NAME=VALUE")]
    options: Vec<String>,
    /// Output form; `marked` on a terminal, `tokens` otherwise.
    #[arg(long, value_enum)]
    display: Option<Display>,
    /// Print the rule applied at each step to stderr.
    #[arg(long)]
    trace: bool,
    /// Read input from a file, one text per line.
    #[arg(long, short, conflicts_with = "text")]
    input: Option<PathBuf>,
    /// Input text; stdin is read line by line when absent.
    text: Option<String>,
}

#[derive(clap::Args)]
struct RenderArgs {
    /// Atlas directory; the built-in glyphs are used when absent.
    #[arg(long)]
    atlas: Option<PathBuf>,
    /// Cell side in pixels.
    #[arg(long, default_value_t = 32)]
    cell: usize,
    /// Output path; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write PNG instead of PBM.
    #[arg(long)]
    png: bool,
    /// Token text; stdin is read when absent, one word per line.
    tokens: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Consonant,
    Vowel,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpKind {
    Thicken,
    Taper,
}

#[derive(clap::Args)]
struct GlyphModifyArgs {
    input: PathBuf,
    output: PathBuf,
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, value_enum)]
    op: OpKind,
    /// Thicken radius.
    #[arg(long, default_value_t = 3)]
    radius: usize,
    /// Taper radius at the stroke start.
    #[arg(long, default_value_t = 1)]
    start: usize,
    /// Taper radius at the stroke end.
    #[arg(long, default_value_t = 4)]
    end: usize,
}

#[derive(Subcommand)]
enum GlyphsCommand {
    /// Write the built-in base glyphs, one plain PBM per letter.
    Init { dir: PathBuf },
}

#[derive(Subcommand)]
enum AtlasCommand {
    /// Synthesize modified glyphs and write the atlas.
    Build {
        /// Base glyph directory; the built-in glyphs are used when absent.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Variant manifest; the built-in one is used when absent.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct KeyboardSimArgs {
    /// Layout JSON, or `-` for the built-in layout.
    layout: String,
    /// Session log, or `-` for stdin.
    session: String,
    #[arg(long, value_enum, default_value = "tokens")]
    display: Display,
}

#[derive(clap::Args)]
struct KeyboardLogArgs {
    /// Layout JSON; the built-in layout when absent.
    #[arg(long)]
    layout: Option<PathBuf>,
    /// Milliseconds between keystrokes.
    #[arg(long, default_value_t = 100)]
    step_ms: u64,
    /// Token text; stdin is read when absent, one word per line.
    tokens: Option<String>,
}

#[derive(Subcommand)]
enum RulesCommand {
    /// Load rule files and report rules, classes and options.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// List built-in profiles, or the rules of one profile or file.
    List {
        #[arg(long, short, conflicts_with = "path")]
        profile: Option<String>,
        path: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Run a corpus TSV (the shipped one when no file is given).
    Run { file: Option<PathBuf> },
}

/// An error that maps to a specific exit code.
#[derive(Debug)]
struct Exit(u8);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(Exit(code)) = e.downcast_ref::<Exit>() {
                return ExitCode::from(*code);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<RuleError>() {
        Some(RuleError::NoRuleMatched { .. }) | Some(RuleError::Pinyin(PinyinError::Unsegmentable { .. })) => {
            EXIT_NO_MATCH
        }
        _ => 1,
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Transliterate(args) => cmd_transliterate(args),
        Command::Render(args) => cmd_render(args),
        Command::GlyphModify(args) => cmd_glyph_modify(args),
        Command::Glyphs {
            command: GlyphsCommand::Init { dir },
        } => cmd_glyphs_init(&dir),
        Command::Atlas {
            command: AtlasCommand::Build { base, manifest, out },
        } => cmd_atlas_build(base.as_deref(), manifest.as_deref(), &out),
        Command::KeyboardSim(args) => cmd_keyboard_sim(args),
        Command::KeyboardLog(args) => cmd_keyboard_log(args),
        Command::KeyboardLayout => {
            io::stdout().write_all(DEFAULT_LAYOUT.as_bytes())?;
            Ok(())
        }
        Command::Rules {
            command: RulesCommand::Validate { paths },
        } => cmd_rules_validate(&paths),
        Command::Rules {
            command: RulesCommand::List { profile, path },
        } => cmd_rules_list(profile.as_deref(), path.as_deref()),
        Command::Corpus {
            command: CorpusCommand::Run { file },
        } => cmd_corpus_run(file.as_deref()),
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).context("reading stdin")?;
    Ok(s)
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// Token text from an argument or stdin; each non-empty line is one or more
/// words.
fn read_transcript(arg: Option<String>) -> Result<Transcript> {
    let text = match arg {
        Some(t) => t,
        None => read_stdin()?,
    };
    let mut transcript = Transcript::default();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        transcript.extend(parse_tokens(line).with_context(|| format!("bad token text `{line}`"))?);
    }
    Ok(transcript)
}

fn load_profile(args: &TransliterateArgs) -> Result<Profile> {
    let mut profile = match (&args.profile, &args.rules) {
        (_, Some(path)) => {
            Profile::Rules(load_ruleset(&read_file(path)?).with_context(|| format!("loading {}", path.display()))?)
        }
        (Some(id), None) => builtin_profile(id)?,
        (None, None) => bail!("one of --profile or --rules is required"),
    };
    for opt in &args.options {
        let (name, value) = opt
            .split_once('=')
            .ok_or_else(|| anyhow!("option `{opt}` is not NAME=VALUE"))?;
        profile.set_option(name, value)?;
    }
    Ok(profile)
}

fn transcribe(profile: &Profile, text: &str, trace: bool) -> Result<Transcript, RuleError> {
    match profile.ruleset() {
        Some(rs) if trace => {
            let result = transliterate(text, rs);
            let steps = match &result {
                Ok(t) => &t.trace[..],
                Err(_) => &[],
            };
            for step in steps {
                let rule = step.rule_line.map_or("-".to_string(), |l| l.to_string());
                eprintln!("trace\t{}\t{}\t{}\t{rule}", step.position, step.byte, step.len);
            }
            result?.compose()
        }
        _ => profile.transcribe(text),
    }
}

fn format_transcript(t: &Transcript, display: Display) -> String {
    match display {
        Display::Tokens => serialize_tokens(t),
        Display::Plain => to_display_text(t, DisplayPolicy::Plain).text,
        Display::Marked => to_display_text(t, DisplayPolicy::Marked).text,
    }
}

fn cmd_transliterate(args: TransliterateArgs) -> Result<()> {
    let profile = load_profile(&args)?;
    let display = args.display.unwrap_or(if io::stdout().is_terminal() {
        Display::Marked
    } else {
        Display::Tokens
    });
    if args.trace && profile.ruleset().is_none() {
        eprintln!("trace: profile `{}` has no rule trace", profile.id());
    }
    let text = match (&args.text, &args.input) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => String::from_utf8(read_file(path)?).context("input is not UTF-8")?,
        (None, None) => read_stdin()?,
    };
    let mut out = String::new();
    for (idx, line) in text.lines().enumerate() {
        let t = transcribe(&profile, line, args.trace).map_err(|e| {
            if args.text.is_none() {
                eprintln!("line {}: {e}", idx + 1);
            } else {
                eprintln!("{e}");
            }
            anyhow::Error::new(Exit(exit_code(&e.into())))
        })?;
        out.push_str(&format_transcript(&t, display));
        out.push('\n');
    }
    write_output(None, out.as_bytes())
}

fn default_atlas() -> Result<Atlas> {
    let manifest = Manifest::parse(DEFAULT_MANIFEST)?;
    Ok(build_atlas_from(base_glyphs(), &manifest)?)
}

fn encode_png(page: &GlyphBitmap) -> Result<Vec<u8>> {
    if page.width() == 0 || page.height() == 0 {
        bail!("an empty page cannot be written as PNG");
    }
    let (w, h) = (page.width() as u32, page.height() as u32);
    let img = image::GrayImage::from_fn(w, h, |x, y| {
        image::Luma([if page.get(x as usize, y as usize) { 0 } else { 255 }])
    });
    let mut bytes = Vec::new();
    img.write_to(&mut io::Cursor::new(&mut bytes), image::ImageFormat::Png)?;
    Ok(bytes)
}

fn cmd_render(args: RenderArgs) -> Result<()> {
    let atlas = match &args.atlas {
        Some(dir) => Atlas::load(dir).with_context(|| format!("loading atlas {}", dir.display()))?,
        None => default_atlas()?,
    };
    let transcript = read_transcript(args.tokens)?;
    let page = render_text(&transcript, &atlas, args.cell)?;
    let bytes = if args.png { encode_png(&page)? } else { page.to_pbm() };
    write_output(args.out.as_deref(), &bytes)
}

fn cmd_glyph_modify(args: GlyphModifyArgs) -> Result<()> {
    let glyph = load_glyph(&read_file(&args.input)?).with_context(|| format!("loading {}", args.input.display()))?;
    let stroke = match args.kind {
        Kind::Consonant => find_target_consonant_stroke(&glyph)?,
        Kind::Vowel => find_target_vowel_stroke(&glyph)?,
    };
    let (first, last) = (stroke.path[0], stroke.path[stroke.len() - 1]);
    eprintln!(
        "stroke: {:?} length {} from ({},{}) to ({},{})",
        stroke.direction,
        stroke.len(),
        first.0,
        first.1,
        last.0,
        last.1
    );
    let op = match args.op {
        OpKind::Thicken => Operator::Thicken { radius: args.radius },
        OpKind::Taper => Operator::Taper {
            start: args.start,
            end: args.end,
        },
    };
    let out = op.apply(&glyph, &stroke)?;
    write_output(Some(&args.output), out.to_pbm_ascii().as_bytes())
}

fn cmd_glyphs_init(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (letter, glyph) in base_glyphs() {
        let path = dir.join(format!("{}.pbm", letter.token().glyph_stem()));
        write_output(Some(&path), glyph.to_pbm_ascii().as_bytes())?;
    }
    Ok(())
}

fn cmd_atlas_build(base: Option<&Path>, manifest: Option<&Path>, out: &Path) -> Result<()> {
    let manifest = match manifest {
        Some(path) => Manifest::parse(std::str::from_utf8(&read_file(path)?).context("manifest is not UTF-8")?)?,
        None => Manifest::parse(DEFAULT_MANIFEST)?,
    };
    let atlas = match base {
        Some(dir) => build_atlas(dir, &manifest)?,
        None => build_atlas_from(base_glyphs(), &manifest)?,
    };
    atlas.write(out)?;
    eprintln!("wrote {} glyphs to {}", atlas.len(), out.display());
    Ok(())
}

fn layout_from(path: Option<&Path>) -> Result<KeyboardLayout> {
    Ok(match path {
        Some(p) => load_layout(&read_file(p)?).with_context(|| format!("loading {}", p.display()))?,
        None => KeyboardLayout::default_layout(),
    })
}

fn cmd_keyboard_sim(args: KeyboardSimArgs) -> Result<()> {
    let layout = layout_from((args.layout != "-").then(|| Path::new(&args.layout)))?;
    let log = if args.session == "-" {
        read_stdin()?
    } else {
        String::from_utf8(read_file(Path::new(&args.session))?).context("session log is not UTF-8")?
    };
    let events: Vec<_> = parse_session_log(&log)?.iter().map(|e| e.event()).collect();
    let (transcript, _) = keystrokes_to_blocks(&events, &layout)?;
    let line = format_transcript(&transcript, args.display) + "\n";
    write_output(None, line.as_bytes())
}

fn cmd_keyboard_log(args: KeyboardLogArgs) -> Result<()> {
    let layout = layout_from(args.layout.as_deref())?;
    let transcript = read_transcript(args.tokens)?;
    let keys = blocks_to_keystrokes(&transcript, &layout)?;
    write_output(None, write_session_log(&keys, args.step_ms).as_bytes())
}

fn describe_ruleset(rs: &RuleSet) -> String {
    let mode = match rs.mode() {
        InputMode::Chars => "chars",
        InputMode::Phonemes => "phonemes",
    };
    let classes: Vec<&str> = rs.classes().iter().map(|c| c.name.as_str()).collect();
    format!(
        "profile {} mode {mode}: {} rules, {} classes [{}], options {}",
        rs.id(),
        rs.rules().len(),
        classes.len(),
        classes.join(" "),
        rs.options()
    )
}

fn cmd_rules_validate(paths: &[PathBuf]) -> Result<()> {
    let mut failed = false;
    let mut out = String::new();
    for path in paths {
        match read_file(path).and_then(|b| Ok(load_ruleset(&b)?)) {
            Ok(rs) => out.push_str(&format!("{}: ok, {}\n", path.display(), describe_ruleset(&rs))),
            Err(e) => {
                failed = true;
                eprintln!("{}: {e:#}", path.display());
            }
        }
    }
    write_output(None, out.as_bytes())?;
    if failed {
        return Err(Exit(1).into());
    }
    Ok(())
}

fn list_rules(source: &str) -> Result<String> {
    let rs = load_ruleset(source.as_bytes())?;
    let lines: Vec<&str> = source.lines().collect();
    let mut out = describe_ruleset(&rs) + "\n";
    for rule in rs.rules() {
        out.push_str(&format!("{}\t{}\n", rule.line(), lines[rule.line() - 1].trim()));
    }
    Ok(out)
}

fn cmd_rules_list(profile: Option<&str>, path: Option<&Path>) -> Result<()> {
    let out = match (profile, path) {
        (_, Some(p)) => list_rules(std::str::from_utf8(&read_file(p)?).context("rule file is not UTF-8")?)?,
        (Some(id), None) => match builtin_ruleset_source(id) {
            Some(src) => list_rules(src)?,
            None => {
                builtin_profile(id)?;
                format!("profile {id}: built-in pinyin table, no rule file\n")
            }
        },
        (None, None) => {
            let mut out = String::new();
            for id in PROFILE_IDS {
                let line = match builtin_profile(id)? {
                    Profile::Rules(rs) => describe_ruleset(&rs),
                    Profile::Pinyin(_) => format!("profile {id}: built-in pinyin table"),
                };
                out.push_str(&line);
                out.push('\n');
            }
            out
        }
    };
    write_output(None, out.as_bytes())
}

fn cmd_corpus_run(file: Option<&Path>) -> Result<()> {
    let text = match file {
        Some(p) => String::from_utf8(read_file(p)?).context("corpus is not UTF-8")?,
        None => SHIPPED_CORPUS.to_string(),
    };
    let outcomes = run_corpus(&parse_corpus(&text)?);
    write_output(None, format_report(&outcomes).as_bytes())?;
    if outcomes.iter().any(|o| o.status != Status::Pass) {
        return Err(Exit(1).into());
    }
    Ok(())
}
