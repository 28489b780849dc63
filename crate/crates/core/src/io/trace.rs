use std::io::Write;

use crate::anytime::AnytimeTrace;
use crate::error::Result;

/// One row per step: `iteration,objective_h,violating_cluster,swapped_cluster`
/// with clusters written as `;`-joined labels. Row 0 is the initial tree.
pub fn write_trace_csv<W: Write>(writer: W, trace: &AnytimeTrace) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record([
        "iteration",
        "objective_h",
        "violating_cluster",
        "swapped_cluster",
    ])?;
    w.write_record(["0", &format!("{:?}", trace.initial.objective_h), "", ""])?;
    for (k, s) in trace.steps.iter().enumerate() {
        w.write_record([
            (k + 1).to_string(),
            format!("{:?}", s.after.objective_h),
            s.violating_cluster.joined(";"),
            s.swapped_grandchild.joined(";"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anytime::anytime_cluster;
    use crate::geometry::{Dataset, Dissimilarity};
    use crate::io::newick::parse;
    use crate::linkage::LinkageKind;

    #[test]
    fn d4_trace() {
        let d = Dataset::from_values(&[0.0, 1.0, 3.0, 7.0], Dissimilarity::Euclidean).unwrap();
        let t = parse("(((1,3),2),4);").unwrap();
        let trace = anytime_cluster(&d, LinkageKind::Single, &t, 10).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &trace).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "iteration,objective_h,violating_cluster,swapped_cluster\n0,8.0,,\n1,7.0,1,3\n"
        );
    }
}
