use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Result of one subcommand, renderable in every format.
#[derive(Debug)]
pub struct Envelope {
    pub command: String,
    /// `None` for pure queries.
    pub verdict: Option<bool>,
    pub payload: Map<String, Value>,
    pub human: String,
    /// Header row first.
    pub table: Vec<Vec<String>>,
}

impl Envelope {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            verdict: None,
            payload: Map::new(),
            human: String::new(),
            table: Vec::new(),
        }
    }

    pub fn field(&mut self, key: &str, value: Value) -> &mut Self {
        self.payload.insert(key.to_string(), value);
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some(false) => 1,
            _ => 0,
        }
    }

    fn verdict_str(&self) -> Option<&'static str> {
        self.verdict.map(|v| if v { "pass" } else { "fail" })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => {
                let mut out = self.human.clone();
                if let Some(v) = self.verdict_str() {
                    if !out.is_empty() && !out.ends_with('\n') {
                        out.push('\n');
                    }
                    out.push_str(&format!("verdict: {v}"));
                }
                out
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("command".into(), Value::String(self.command.clone()));
                obj.insert("format".into(), Value::String("json".into()));
                for (k, v) in &self.payload {
                    obj.insert(k.clone(), v.clone());
                }
                obj.insert(
                    "verdict".into(),
                    self.verdict_str().map_or(Value::Null, |v| Value::String(v.into())),
                );
                serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable")
            }
            Format::Csv => {
                let lines: Vec<String> = self.table.iter().map(|r| r.join(",")).collect();
                lines.join("\n")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(verdict: Option<bool>) -> Envelope {
        let mut env = Envelope::new("demo");
        env.verdict = verdict;
        env.field("value", Value::String("2/7".into()));
        env.human = "2/7".into();
        env.table = vec![vec!["value".into()], vec!["2/7".into()]];
        env
    }

    #[test]
    fn exit_codes_follow_verdict() {
        assert_eq!(sample(None).exit_code(), 0);
        assert_eq!(sample(Some(true)).exit_code(), 0);
        assert_eq!(sample(Some(false)).exit_code(), 1);
    }

    #[test]
    fn renders_each_format() {
        let env = sample(Some(false));
        assert_eq!(env.render(Format::Human), "2/7\nverdict: fail");
        assert_eq!(env.render(Format::Csv), "value\n2/7");
        let json: Value = serde_json::from_str(&env.render(Format::Json)).unwrap();
        let keys: Vec<&String> = json.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "format", "value", "verdict"]);
        assert_eq!(sample(None).render(Format::Human), "2/7");
    }
}
