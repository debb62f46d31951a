#![allow(dead_code)]

use std::io::{BufRead, BufReader, Write};
use std::net::{TcpListener, TcpStream};
use std::path::Path;
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn powerexp(args: &[&str]) -> Output {
    powerexp_env(args, &[])
}

pub fn powerexp_env(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_powerexp"));
    cmd.args(args).env_remove("POWEREXP_OEIS_URL").env_remove("POWEREXP_CACHE_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Output {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

pub fn schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Parses `text` as JSON and returns the schema violations, if any.
pub fn schema_errors(name: &str, text: &str) -> Vec<String> {
    let instance: serde_json::Value = serde_json::from_str(text).expect("valid JSON");
    let validator = jsonschema::validator_for(&schema(name)).expect("schema compiles");
    validator.iter_errors(&instance).map(|e| format!("{e} at {}", e.instance_path)).collect()
}

/// HTTP server answering `GET /<id>/b<digits>.txt` with the given bodies; 404 otherwise.
pub struct Stub {
    pub base: String,
    pub hits: Arc<AtomicUsize>,
}

pub fn stub(files: Vec<(String, String)>) -> Stub {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let base = format!("http://{}", listener.local_addr().unwrap());
    let hits = Arc::new(AtomicUsize::new(0));
    let counter = hits.clone();
    let files = Arc::new(files);
    thread::spawn(move || {
        for stream in listener.incoming().flatten() {
            counter.fetch_add(1, Ordering::SeqCst);
            let files = files.clone();
            thread::spawn(move || answer(stream, &files));
        }
    });
    Stub { base, hits }
}

fn answer(stream: TcpStream, files: &[(String, String)]) {
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut request = String::new();
    reader.read_line(&mut request).unwrap();
    loop {
        let mut line = String::new();
        if reader.read_line(&mut line).unwrap() == 0 || line == "\r\n" {
            break;
        }
    }
    let path = request.split_whitespace().nth(1).unwrap_or("/");
    let (status, body) = match files.iter().find(|(p, _)| p == path) {
        Some((_, body)) => ("200 OK", body.as_str()),
        None => ("404 Not Found", "not found\n"),
    };
    let mut stream = stream;
    let _ = write!(
        stream,
        "HTTP/1.1 {status}\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
}
