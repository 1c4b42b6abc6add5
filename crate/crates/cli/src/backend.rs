//! Mask-filling backend served by an external process.
//!
//! For every query the program is started once. It receives one JSON request
//! on stdin and must print one JSON response on stdout:
//!
//! ```text
//! request:  {"prompt": "This election people will vote for <mask>.", "mask_token": "<mask>"}
//! response: {"tokens": [["BJP", 0.31], ["Congress", 0.22]]}
//! ```

use std::io::Write;
use std::process::{Command, Stdio};

use inkspace_core::probe::{MaskBackend, MASK};
use inkspace_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize)]
pub struct Request<'a> {
    pub prompt: &'a str,
    pub mask_token: &'a str,
}

#[derive(Debug, Deserialize)]
pub struct Response {
    pub tokens: Vec<(String, f64)>,
}

#[derive(Debug, Clone)]
pub struct CommandBackend {
    id: String,
    program: String,
    args: Vec<String>,
}

impl CommandBackend {
    pub fn new(id: &str, program: &str, args: &[String]) -> Self {
        CommandBackend { id: id.to_string(), program: program.to_string(), args: args.to_vec() }
    }
}

impl MaskBackend for CommandBackend {
    fn id(&self) -> &str {
        &self.id
    }

    fn fill(&self, prompt: &str) -> Result<Vec<(String, f64)>> {
        let fail = |what: &str, e: &dyn std::fmt::Display| Error::Backend(format!("{}: {what}: {e}", self.program));
        let request = serde_json::to_vec(&Request { prompt, mask_token: MASK }).map_err(|e| fail("encode", &e))?;
        let mut child = Command::new(&self.program)
            .args(&self.args)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()
            .map_err(|e| fail("spawn", &e))?;
        child
            .stdin
            .take()
            .expect("piped stdin")
            .write_all(&request)
            .map_err(|e| fail("write request", &e))?;
        let output = child.wait_with_output().map_err(|e| fail("wait", &e))?;
        if !output.status.success() {
            return Err(fail("exit", &output.status));
        }
        let response: Response = serde_json::from_slice(&output.stdout).map_err(|e| fail("decode response", &e))?;
        Ok(response.tokens)
    }
}

#[cfg(all(test, unix))]
mod tests {
    use super::*;
    use inkspace_core::probe::{popularity_probability, vote_preference};

    fn shell(script: &str) -> CommandBackend {
        CommandBackend::new("sh", "sh", &["-c".to_string(), script.to_string()])
    }

    #[test]
    fn round_trip_through_a_process() {
        let b = shell(r#"cat > /dev/null; echo '{"tokens": [["BJP", 0.3], ["Congress", 0.1], ["other", 0.6]]}'"#);
        assert_eq!(vote_preference(&b, "BJP").unwrap(), 0.3);
        assert!((popularity_probability(&b, "BJP", "Congress").unwrap().b - 0.75).abs() < 1e-12);
    }

    #[test]
    fn request_shape() {
        let b = shell(r#"req=$(cat); case "$req" in *'"mask_token":"<mask>"'*) echo '{"tokens": [["ok", 1.0]]}';; *) exit 3;; esac"#);
        assert_eq!(b.fill("a <mask> b").unwrap(), [("ok".to_string(), 1.0)]);
    }

    #[test]
    fn failures_surface() {
        assert!(matches!(shell("exit 2").fill("<mask>"), Err(Error::Backend(_))));
        assert!(matches!(shell("echo nope").fill("<mask>"), Err(Error::Backend(_))));
        assert!(matches!(CommandBackend::new("x", "/nonexistent/prog", &[]).fill("<mask>"), Err(Error::Backend(_))));
    }
}
