//! A small experiment: config, execution with persistence, report and
//! convergence curves. Results go to a directory under the system temp dir.

use quatswarm::harness::{emit_convergence, execute, parse_config, report};
use quatswarm::Result;

fn main() -> Result<()> {
    let out = std::env::temp_dir().join("quatswarm-example");
    let text = format!(
        r#"{{
          "algorithms": ["ba", "qba", "de", "abc"],
          "problems": ["sphere", "rastrigin", "schwefel-2.26"],
          "dimension": 5,
          "runs_per_cell": 10,
          "output_dir": {:?},
          "algorithm_settings": {{ "qba": {{ "encoding": "quat-shifted-norm" }} }}
        }}"#,
        out.to_str().unwrap()
    );
    let cfg = parse_config(&text, "inline.json".as_ref())?;
    let run = execute(&cfg)?;
    println!(
        "{} records, {} newly executed, in {}",
        run.records.len(),
        run.executed,
        out.display()
    );

    let summary = report(&run.records)?;
    summary.write(&out)?;
    print!("{}", summary.to_text());

    let curves = emit_convergence(&run.records, out.join("plots"))?;
    println!(
        "{} convergence files in {}",
        curves.len(),
        out.join("plots").display()
    );
    Ok(())
}
