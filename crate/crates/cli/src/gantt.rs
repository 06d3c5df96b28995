//! Gantt charts: one row per machine, one column per time unit.

use std::fmt::Write as _;

use smc_core::{Instance, Schedule, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Idle,
    Blocking,
    Processing,
}

fn grid(instance: &Instance, schedule: &Schedule) -> Vec<Vec<Cell>> {
    let width = schedule.makespan(instance) as usize;
    let mut rows = vec![vec![Cell::Idle; width]; instance.m()];
    for e in &schedule.entries {
        let job = &instance.jobs[e.job];
        let s = e.start as usize;
        let (b1, p, q) = (job.b1 as usize, job.p as usize, job.q() as usize);
        for (t, cell) in rows[e.machine][s..s + q].iter_mut().enumerate() {
            *cell = if t < b1 || t >= b1 + p { Cell::Blocking } else { Cell::Processing };
        }
    }
    rows
}

/// `#` blocking, `=` processing, `.` idle. Empty schedules render as nothing.
pub fn render_text(instance: &Instance, schedule: &Schedule) -> String {
    if schedule.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    for row in grid(instance, schedule) {
        out.extend(row.iter().map(|c| match c {
            Cell::Idle => '.',
            Cell::Blocking => '#',
            Cell::Processing => '=',
        }));
        out.push('\n');
    }
    out
}

const UNIT: Time = 16;
const ROW: Time = 20;
const LABEL: Time = 40;

pub fn render_svg(instance: &Instance, schedule: &Schedule) -> String {
    let rows = if schedule.is_empty() { Vec::new() } else { grid(instance, schedule) };
    let width = LABEL + UNIT * schedule.makespan(instance);
    let height = ROW * rows.len() as Time;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" font-family=\"monospace\" font-size=\"12\">\n"
    );
    for (machine, row) in rows.iter().enumerate() {
        let y = ROW * machine as Time;
        let _ = writeln!(out, "  <text x=\"2\" y=\"{}\">M{machine}</text>", y + 14);
        let mut t = 0;
        while t < row.len() {
            let cell = row[t];
            let run = row[t..].iter().take_while(|&&c| c == cell).count();
            let fill = match cell {
                Cell::Idle => None,
                Cell::Blocking => Some("#555555"),
                Cell::Processing => Some("#9ecae1"),
            };
            if let Some(fill) = fill {
                let _ = writeln!(
                    out,
                    "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\" stroke=\"#000000\"/>",
                    LABEL + UNIT * t as Time,
                    y + 2,
                    UNIT * run as Time,
                    ROW - 4
                );
            }
            t += run;
        }
    }
    out.push_str("</svg>\n");
    out
}
