//! Remote backend exercised against a minimal in-process HTTP server.

use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Duration;

use ralp_lm::{LanguageModel, LmError, LmRequest, RemoteConfig, RemoteLm};

/// Serve `responses` in order, one per connection, then stop.
fn serve(listener: TcpListener, responses: Vec<(u16, String)>, hits: Arc<AtomicUsize>) {
    std::thread::spawn(move || {
        for (status, body) in responses {
            let (mut stream, _) = match listener.accept() {
                Ok(conn) => conn,
                Err(_) => return,
            };
            hits.fetch_add(1, Ordering::SeqCst);
            let _ = read_request(&mut stream);
            let reason = match status {
                200 => "OK",
                400 => "Bad Request",
                503 => "Service Unavailable",
                _ => "Status",
            };
            let response = format!(
                "HTTP/1.1 {status} {reason}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            let _ = stream.write_all(response.as_bytes());
        }
    });
}

fn read_request(stream: &mut TcpStream) -> String {
    stream
        .set_read_timeout(Some(Duration::from_secs(5)))
        .unwrap();
    let mut buf = Vec::new();
    let mut chunk = [0u8; 1024];
    loop {
        match stream.read(&mut chunk) {
            Ok(0) => break,
            Ok(n) => {
                buf.extend_from_slice(&chunk[..n]);
                let text = String::from_utf8_lossy(&buf);
                if let Some(header_end) = text.find("\r\n\r\n") {
                    let content_length = text
                        .lines()
                        .find_map(|l| l.strip_prefix("content-length: ").or_else(|| l.strip_prefix("Content-Length: ")))
                        .and_then(|v| v.trim().parse::<usize>().ok())
                        .unwrap_or(0);
                    if buf.len() >= header_end + 4 + content_length {
                        break;
                    }
                }
            }
            Err(_) => break,
        }
    }
    String::from_utf8_lossy(&buf).into_owned()
}

fn ok_body(content: &str) -> String {
    format!(
        r#"{{"choices":[{{"message":{{"role":"assistant","content":"{content}"}}}}],"usage":{{"prompt_tokens":12,"completion_tokens":3}}}}"#
    )
}

fn config_for(listener: &TcpListener) -> RemoteConfig {
    let addr = listener.local_addr().unwrap();
    let mut cfg = RemoteConfig::new(format!("http://{addr}"), "test-model");
    cfg.base_backoff = Duration::from_millis(5);
    cfg.request_timeout = Duration::from_secs(5);
    cfg
}

#[test]
fn parses_first_choice_and_usage() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let hits = Arc::new(AtomicUsize::new(0));
    serve(listener.try_clone().unwrap(), vec![(200, ok_body("hello"))], hits.clone());

    let lm = RemoteLm::new(config_for(&listener)).unwrap();
    let resp = lm.complete(&LmRequest::from_prompt("hi")).unwrap();
    assert_eq!(resp.text, "hello");
    assert_eq!(resp.usage.prompt_tokens, 12);
    assert_eq!(resp.usage.completion_tokens, 3);
    assert_eq!(hits.load(Ordering::SeqCst), 1);
}

#[test]
fn retries_transient_status_then_succeeds() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let hits = Arc::new(AtomicUsize::new(0));
    serve(
        listener.try_clone().unwrap(),
        vec![
            (503, "overloaded".into()),
            (503, "overloaded".into()),
            (200, ok_body("recovered")),
        ],
        hits.clone(),
    );

    let lm = RemoteLm::new(config_for(&listener)).unwrap();
    let resp = lm.complete(&LmRequest::from_prompt("hi")).unwrap();
    assert_eq!(resp.text, "recovered");
    assert_eq!(hits.load(Ordering::SeqCst), 3);
}

#[test]
fn non_transient_status_is_a_protocol_error() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let hits = Arc::new(AtomicUsize::new(0));
    serve(
        listener.try_clone().unwrap(),
        vec![(400, r#"{"error":"bad request"}"#.into())],
        hits.clone(),
    );

    let lm = RemoteLm::new(config_for(&listener)).unwrap();
    let err = lm.complete(&LmRequest::from_prompt("hi")).unwrap_err();
    match err {
        LmError::Protocol { status, body_excerpt } => {
            assert_eq!(status, 400);
            assert!(body_excerpt.contains("bad request"));
        }
        other => panic!("unexpected error {other:?}"),
    }
    // no retry on a 400
    assert_eq!(hits.load(Ordering::SeqCst), 1);
}

#[test]
fn unreachable_endpoint_is_a_transport_error() {
    // bind then drop to get a dead port
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let mut cfg = config_for(&listener);
    cfg.max_attempts = 2;
    drop(listener);

    let lm = RemoteLm::new(cfg).unwrap();
    let err = lm.complete(&LmRequest::from_prompt("hi")).unwrap_err();
    assert!(matches!(err, LmError::Transport { attempts: 2, .. }));
}
