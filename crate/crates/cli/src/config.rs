//! `--config` files: flat `key=value` lines, `#` comments. Keys are long
//! flag names (`n_max` and `n-max` are the same key). Each entry becomes a
//! flag placed right after the subcommand, skipped when the same flag is
//! already on the command line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::Path;

use clap::{ArgAction, CommandFactory};

use crate::args::Cli;
use crate::CliError;

const RESERVED: [&str; 3] = ["config", "help", "version"];

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Usage(format!(
                "config line {}: empty key",
                lineno + 1
            )));
        }
        if !seen.insert(key.clone()) {
            return Err(CliError::Usage(format!("config key {key:?} appears twice")));
        }
        out.push((key, value.trim().to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

fn given_on_command_line(argv: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    argv.iter().any(|a| {
        let s = a.to_string_lossy();
        s == flag || s.starts_with(&format!("{flag}="))
    })
}

/// Inserts the entries of the `--config` file (if any) into `argv`.
pub fn expand_args(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| {
        CliError::Usage(format!(
            "cannot read config {}: {e}",
            Path::new(&path).display()
        ))
    })?;
    let entries = parse_config(&text)?;

    let root = Cli::command();
    let Some((position, sub)) = argv
        .iter()
        .enumerate()
        .skip(1)
        .find_map(|(i, a)| root.find_subcommand(a).map(|s| (i, s.clone())))
    else {
        // no subcommand: let clap report it
        return Ok(argv);
    };

    let known = root.get_arguments().chain(sub.get_arguments());
    let mut flags = std::collections::BTreeMap::new();
    for arg in known {
        if let Some(long) = arg.get_long() {
            if !RESERVED.contains(&long) {
                flags.insert(
                    long.to_string(),
                    matches!(arg.get_action(), ArgAction::SetTrue),
                );
            }
        }
    }

    let mut inserted = Vec::new();
    for (key, value) in entries {
        let is_switch = *flags.get(&key).ok_or_else(|| {
            CliError::Usage(format!(
                "config key {key:?} is not an option of `{}`",
                sub.get_name()
            ))
        })?;
        if given_on_command_line(&argv, &key) {
            continue;
        }
        if is_switch {
            match value.as_str() {
                "true" => inserted.push(OsString::from(format!("--{key}"))),
                "false" => {}
                _ => {
                    return Err(CliError::Usage(format!(
                        "config key {key:?} takes true or false"
                    )))
                }
            }
        } else {
            inserted.push(OsString::from(format!("--{key}={value}")));
        }
    }

    let mut out = argv;
    out.splice(position + 1..position + 1, inserted);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_lines() {
        let e = parse_config("# comment\nn_max = 30\n\nb=2 # trailing\n").unwrap();
        assert_eq!(
            e,
            vec![("n-max".into(), "30".into()), ("b".into(), "2".into())]
        );
        assert!(parse_config("oops").is_err());
        assert!(parse_config("a=1\na=2").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "n_max=30\nb=2\nseed=5\n").unwrap();
        let argv = os(&[
            "negspin",
            "landau",
            "--b",
            "3",
            "--config",
            path.to_str().unwrap(),
        ]);
        let out = expand_args(argv).unwrap();
        let s: Vec<_> = out
            .iter()
            .map(|a| a.to_string_lossy().into_owned())
            .collect();
        assert!(s.contains(&"--n-max=30".to_string()));
        assert!(s.contains(&"--seed=5".to_string()));
        assert!(!s.contains(&"--b=2".to_string()));
    }

    #[test]
    fn rejects_unknown_keys() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "n_points=100\n").unwrap();
        let argv = os(&["negspin", "landau", "--config", path.to_str().unwrap()]);
        assert!(matches!(expand_args(argv), Err(CliError::Usage(_))));
    }

    #[test]
    fn switches() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "wrong_energy=true\ntrials=3\n").unwrap();
        let argv = os(&["negspin", "reduction", "--config", path.to_str().unwrap()]);
        let s: Vec<_> = expand_args(argv)
            .unwrap()
            .iter()
            .map(|a| a.to_string_lossy().into_owned())
            .collect();
        assert_eq!(&s[2..4], ["--wrong-energy", "--trials=3"]);
    }
}
