//! Table and JSON emitters for result records.

use crate::exec::{Format, ResultRecord};
use serde_json::json;

pub fn emit(records: &[ResultRecord], format: Format, exit: i32) -> String {
    match format {
        Format::Json => {
            let body = json!({
                "records": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                "exit": exit,
            });
            serde_json::to_string_pretty(&body).unwrap()
        }
        Format::Table => {
            let mut out = String::new();
            let width = records
                .iter()
                .map(|r| r.request.len())
                .max()
                .unwrap_or(8)
                .min(60);
            for r in records {
                let mut request = r.request.replace('\n', " ");
                if request.len() > width {
                    request.truncate(width - 1);
                    request.push('…');
                }
                out.push_str(&format!(
                    "{request:<width$}  {:<8}  {}  [{:.1} ms]\n",
                    r.status.to_string(),
                    r.value,
                    r.wall_ms,
                ));
            }
            out
        }
    }
}
