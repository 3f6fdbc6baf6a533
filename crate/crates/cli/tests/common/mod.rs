#![allow(dead_code)]

use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Output, Stdio};

pub fn fakeyou() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fakeyou"));
    cmd.env_remove("FAKEYOU_ADDR")
        .env_remove("FAKEYOU_DATA_DIR")
        .env_remove("FAKEYOU_SEED")
        .env("RUST_LOG", "warn");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    fakeyou().args(args).output().expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// The last stderr line parsed as the JSON error object.
pub fn error_json(out: &Output) -> serde_json::Value {
    let stderr = String::from_utf8_lossy(&out.stderr);
    let line = stderr.lines().last().unwrap_or_default();
    serde_json::from_str(line).unwrap_or_else(|_| panic!("not a JSON error line: {stderr}"))
}

/// An `n`-item fixture with one small image per item and a config file
/// pointing at it. Returns the config path.
pub fn write_fixture(dir: &Path, n: usize) -> PathBuf {
    std::fs::create_dir_all(dir.join("img")).unwrap();
    let mut lines = String::new();
    for i in 0..n {
        std::fs::write(dir.join(format!("img/{i}.png")), format!("png-{i}")).unwrap();
        lines.push_str(&format!(
            "{{\"headline\":\"Landtag berät Gesetz Nummer {i}\",\"image\":\"img/{i}.png\",\"url\":\"https://news.example/{i}\",\"date\":\"2020-05-01\",\"language\":\"de\"}}\n"
        ));
    }
    std::fs::write(dir.join("items.jsonl"), lines).unwrap();
    let config = dir.join("sources.toml");
    std::fs::write(
        &config,
        "[[source]]\nname = \"fixture\"\nmode = \"fixture\"\nfixture_path = \"items.jsonl\"\n",
    )
    .unwrap();
    config
}

/// A running `fakeyou serve`, killed on drop.
pub struct Served {
    pub child: Child,
    pub addr: String,
}

impl Served {
    pub fn start(data_dir: &Path, seed: u64) -> Served {
        let mut child = fakeyou()
            .args(["serve", "--addr", "127.0.0.1:0"])
            .env("FAKEYOU_DATA_DIR", data_dir)
            .env("FAKEYOU_SEED", seed.to_string())
            .stdout(Stdio::piped())
            .stderr(Stdio::piped())
            .spawn()
            .unwrap();
        let mut line = String::new();
        BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap_or_else(|_| panic!("startup line: {line}"));
        Served {
            child,
            addr: v["listening"].as_str().unwrap().to_string(),
        }
    }

    pub fn url(&self, path: &str) -> String {
        format!("http://{}{}", self.addr, path)
    }

    /// Sends SIGTERM and waits for the exit status.
    pub fn terminate(mut self) -> std::process::ExitStatus {
        let pid = self.child.id().to_string();
        Command::new("kill").args(["-TERM", &pid]).status().unwrap();
        self.child.wait().unwrap()
    }
}

impl Drop for Served {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}
