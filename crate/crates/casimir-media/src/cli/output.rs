//! Deterministic CSV and gnuplot-script emission.

use std::io::{self, Write};

use super::runner::RunOutput;

/// Fixed-format float: 17 significant digits, scientific notation, so that
/// identical runs produce byte-identical files.
fn fmt(value: f64) -> String {
    format!("{value:.16e}")
}

/// Writes the result rows as CSV: a `# units:` comment, one header row, one
/// data row per sweep point, and a summary footer comment.
pub fn emit_csv(output: &RunOutput, mut writer: impl Write) -> io::Result<()> {
    writeln!(writer, "# units: {}", output.unit_label)?;
    let mut header = vec![output.sweep_name.to_string()];
    header.extend(output.columns.iter().map(|c| c.to_string()));
    header.push("error_estimate".to_string());
    header.push("converged".to_string());
    writeln!(writer, "{}", header.join(","))?;
    for row in &output.rows {
        let mut fields = vec![fmt(row.sweep_value)];
        fields.extend(row.values.iter().map(|v| fmt(*v)));
        fields.push(fmt(row.error_estimate));
        fields.push(if row.converged { "1" } else { "0" }.to_string());
        writeln!(writer, "{}", fields.join(","))?;
    }
    writeln!(
        writer,
        "# summary: evaluations={} worst_error_estimate={}",
        output.total_evaluations,
        fmt(output.worst_error_estimate)
    )
}

/// Emits a self-contained gnuplot script plotting |column 2..| against the
/// sweep variable on log-log axes, reading from `csv_path`.
pub fn emit_plot_script(
    output: &RunOutput,
    csv_path: &str,
    mut writer: impl Write,
) -> io::Result<()> {
    writeln!(writer, "# gnuplot script generated against {csv_path}")?;
    writeln!(writer, "set datafile separator ','")?;
    writeln!(writer, "set datafile commentschars '#'")?;
    writeln!(writer, "set logscale xy")?;
    writeln!(writer, "set xlabel '{} [{}]'", output.sweep_name, output.unit_label)?;
    writeln!(writer, "set ylabel '|force| [{}]'", output.unit_label)?;
    writeln!(writer, "set key left bottom")?;
    let plots: Vec<String> = output
        .columns
        .iter()
        .enumerate()
        .map(|(i, name)| {
            format!(
                "'{csv_path}' using 1:(abs(${col})) every ::1 with lines title '{name}'",
                col = i + 2
            )
        })
        .collect();
    writeln!(writer, "plot \\\n  {}", plots.join(", \\\n  "))
}
