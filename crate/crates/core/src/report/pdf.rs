//! Just enough PDF to print a monospaced report: Courier text lines on A4
//! pages, uncompressed content streams, a classic xref table.
//!
//! [`extract_text`] reads back what [`render`] wrote. It understands only
//! this writer's output, which is all the tests need.

use std::fmt::Write as _;

use chrono::DateTime;

use crate::case::Timestamp;

const PAGE_WIDTH: u32 = 595;
const PAGE_HEIGHT: u32 = 842;
const MARGIN: u32 = 40;
const FONT_SIZE: u32 = 8;
const LEADING: u32 = 11;
pub const LINES_PER_PAGE: usize = ((PAGE_HEIGHT - 2 * MARGIN) / LEADING) as usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unreadable PDF: {0}")]
pub struct PdfError(String);

/// Lays `lines` out top to bottom, breaking pages as needed.
pub fn render(title: &str, lines: &[String], created: Timestamp) -> Vec<u8> {
    let pages: Vec<&[String]> = if lines.is_empty() {
        vec![&[]]
    } else {
        lines.chunks(LINES_PER_PAGE).collect()
    };

    // 1 catalog, 2 pages, 3 font, 4 info, then (page, content) pairs
    let page_obj = |i: usize| 5 + 2 * i;
    let mut objects: Vec<Vec<u8>> = Vec::new();
    objects.push(b"<< /Type /Catalog /Pages 2 0 R >>".to_vec());
    let kids: Vec<String> = (0..pages.len()).map(|i| format!("{} 0 R", page_obj(i))).collect();
    objects.push(
        format!("<< /Type /Pages /Kids [{}] /Count {} >>", kids.join(" "), pages.len()).into_bytes(),
    );
    objects.push(
        b"<< /Type /Font /Subtype /Type1 /BaseFont /Courier /Encoding /WinAnsiEncoding >>".to_vec(),
    );
    let mut info = b"<< /Title ".to_vec();
    info.extend(literal(title));
    info.extend(b" /Producer (docketd) /CreationDate ");
    info.extend(literal(&pdf_date(created)));
    info.extend(b" >>");
    objects.push(info);

    for (i, page_lines) in pages.iter().enumerate() {
        objects.push(
            format!(
                "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 {PAGE_WIDTH} {PAGE_HEIGHT}] \
                 /Resources << /Font << /F1 3 0 R >> >> /Contents {} 0 R >>",
                page_obj(i) + 1
            )
            .into_bytes(),
        );
        let mut content = format!(
            "BT\n/F1 {FONT_SIZE} Tf\n{LEADING} TL\n{MARGIN} {} Td\n",
            PAGE_HEIGHT - MARGIN - FONT_SIZE
        )
        .into_bytes();
        for line in *page_lines {
            content.extend(literal(line));
            content.extend(b" Tj T*\n");
        }
        content.extend(b"ET");
        let mut stream = format!("<< /Length {} >>\nstream\n", content.len()).into_bytes();
        stream.extend(content);
        stream.extend(b"\nendstream");
        objects.push(stream);
    }

    let mut out = b"%PDF-1.4\n%\xE2\xE3\xCF\xD3\n".to_vec();
    let mut offsets = Vec::with_capacity(objects.len());
    for (n, body) in objects.iter().enumerate() {
        offsets.push(out.len());
        out.extend(format!("{} 0 obj\n", n + 1).into_bytes());
        out.extend(body);
        out.extend(b"\nendobj\n");
    }
    let xref_at = out.len();
    let mut xref = format!("xref\n0 {}\n0000000000 65535 f \n", objects.len() + 1);
    for off in offsets {
        let _ = writeln!(xref, "{off:010} 00000 n ");
    }
    let _ = write!(
        xref,
        "trailer\n<< /Size {} /Root 1 0 R /Info 4 0 R >>\nstartxref\n{xref_at}\n%%EOF\n",
        objects.len() + 1
    );
    out.extend(xref.into_bytes());
    out
}

fn pdf_date(ts: Timestamp) -> String {
    DateTime::from_timestamp(ts.0, 0)
        .map(|dt| dt.format("D:%Y%m%d%H%M%SZ").to_string())
        .unwrap_or_default()
}

/// A PDF string literal in WinAnsi (Latin-1 subset); other characters print
/// as `?`.
fn literal(text: &str) -> Vec<u8> {
    let mut out = vec![b'('];
    for ch in text.chars() {
        let byte = u8::try_from(u32::from(ch)).ok().filter(|&b| b >= 0x20 && b != 0x7f).unwrap_or(b'?');
        if matches!(byte, b'(' | b')' | b'\\') {
            out.push(b'\\');
        }
        out.push(byte);
    }
    out.push(b')');
    out
}

/// Text lines shown by `Tj`, in page order.
pub fn extract_text(pdf: &[u8]) -> Result<Vec<String>, PdfError> {
    let err = |m: &str| PdfError(m.to_owned());
    if !pdf.starts_with(b"%PDF-") {
        return Err(err("missing header"));
    }
    let mut lines = Vec::new();
    let mut rest = pdf;
    const OPEN: &[u8] = b">>\nstream\n";
    while let Some(start) = find(rest, OPEN) {
        let body = &rest[start + OPEN.len()..];
        let end = find(body, b"\nendstream").ok_or_else(|| err("unterminated stream"))?;
        let mut content = &body[..end];
        while let Some(open) = content.iter().position(|&b| b == b'(') {
            let mut text = String::new();
            let mut i = open + 1;
            loop {
                match content.get(i) {
                    None => return Err(err("unterminated string")),
                    Some(b'\\') => {
                        let escaped = *content.get(i + 1).ok_or_else(|| err("dangling escape"))?;
                        text.push(char::from(escaped));
                        i += 2;
                    }
                    Some(b')') => break,
                    Some(&b) => {
                        text.push(char::from(b));
                        i += 1;
                    }
                }
            }
            lines.push(text);
            content = &content[i + 1..];
        }
        rest = &body[end..];
    }
    Ok(lines)
}

fn find(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    haystack.windows(needle.len()).position(|w| w == needle)
}
