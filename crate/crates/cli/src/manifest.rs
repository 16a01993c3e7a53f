//! Sidecar `<output>.manifest` files: `key=value` lines recording the command,
//! every resolved parameter, the seed and the tool version.

use std::fs;

use crate::error::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub command: String,
    pub tool_version: String,
    pub seed: Option<u64>,
    pub output: String,
    /// Flag name (without dashes) and its resolved value, in flag order.
    pub params: Vec<(String, String)>,
}

impl Manifest {
    pub fn render(&self) -> String {
        let mut s = format!(
            "command={}\ntool_version={}\nseed={}\noutput={}\n",
            self.command,
            self.tool_version,
            self.seed.map_or("none".to_string(), |s| s.to_string()),
            self.output
        );
        for (k, v) in &self.params {
            s.push_str(&format!("param.{k}={v}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut command = None;
        let mut tool_version = None;
        let mut seed = None;
        let mut output = None;
        let mut params = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("manifest line {} is not key=value", n + 1)))?;
            match key {
                "command" => command = Some(value.to_string()),
                "tool_version" => tool_version = Some(value.to_string()),
                "seed" => {
                    seed = match value {
                        "none" => None,
                        v => Some(
                            v.parse()
                                .map_err(|_| CliError::Usage(format!("bad seed {v:?} in manifest")))?,
                        ),
                    }
                }
                "output" => output = Some(value.to_string()),
                k => match k.strip_prefix("param.") {
                    Some(p) => params.push((p.to_string(), value.to_string())),
                    None => return Err(CliError::Usage(format!("unknown manifest key {k:?}"))),
                },
            }
        }
        let missing = |k: &str| CliError::Usage(format!("manifest is missing {k}"));
        Ok(Manifest {
            command: command.ok_or_else(|| missing("command"))?,
            tool_version: tool_version.ok_or_else(|| missing("tool_version"))?,
            seed,
            output: output.ok_or_else(|| missing("output"))?,
            params,
        })
    }

    /// Command line equivalent to the recorded run, writing to `output`.
    pub fn to_argv(&self, output: &str) -> Vec<String> {
        let mut argv = vec!["eprsim".to_string(), self.command.clone()];
        for (k, v) in &self.params {
            match v.as_str() {
                "true" => argv.push(format!("--{k}")),
                "false" => {}
                _ => {
                    argv.push(format!("--{k}"));
                    argv.push(v.clone());
                }
            }
        }
        argv.push("--out".into());
        argv.push(output.into());
        argv
    }

    pub fn write_for(&self, output: &str) -> Result<(), CliError> {
        let path = format!("{output}.manifest");
        fs::write(&path, self.render()).map_err(|e| CliError::Io(format!("cannot write {path}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_parse_round_trip() {
        let m = Manifest {
            command: "montecarlo".into(),
            tool_version: TOOL_VERSION.into(),
            seed: Some(7),
            output: "/tmp/x.csv".into(),
            params: vec![
                ("settings".into(), "0,90,45,135".into()),
                ("no-decay".into(), "true".into()),
            ],
        };
        assert_eq!(Manifest::parse(&m.render()).unwrap(), m);
        let argv = m.to_argv("y.csv");
        assert_eq!(
            argv,
            [
                "eprsim",
                "montecarlo",
                "--settings",
                "0,90,45,135",
                "--no-decay",
                "--out",
                "y.csv"
            ]
        );
    }

    #[test]
    fn rejects_garbage() {
        assert!(Manifest::parse("command=scan\nnonsense").is_err());
        assert!(Manifest::parse("command=scan\n").is_err());
    }
}
