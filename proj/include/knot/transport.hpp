#ifndef KNOT_TRANSPORT_HPP
#define KNOT_TRANSPORT_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "knot/wire.hpp"

namespace knot {

/// Reliable ordered byte stream; one protocol session owns a connection
/// at a time. Implementations: an in-memory duplex pipe for tests and
/// local runs, and a TCP socket.
class Stream {
 public:
  virtual ~Stream() = default;
  virtual void write_all(const std::uint8_t* data, std::size_t len) = 0;
  // Blocks until len bytes arrive; throws Errc::io on EOF or failure.
  virtual void read_exact(std::uint8_t* data, std::size_t len) = 0;
};

// Two connected in-process stream ends. Thread-safe; each end may live on
// its own thread, or a single thread can alternate as long as it writes
// before it reads (the pipe buffers without bound).
std::pair<std::unique_ptr<Stream>, std::unique_ptr<Stream>> make_pipe();

class TcpStream final : public Stream {
 public:
  explicit TcpStream(int fd);
  ~TcpStream() override;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;

  static std::unique_ptr<TcpStream> connect(const std::string& host,
                                            std::uint16_t port);

  void write_all(const std::uint8_t* data, std::size_t len) override;
  void read_exact(std::uint8_t* data, std::size_t len) override;

 private:
  int fd_;
};

class TcpListener {
 public:
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<TcpStream> accept();

 private:
  int fd_;
  std::uint16_t port_;
};

// "host:port" with a numeric port; port 0 asks the OS to pick.
std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& text);

inline constexpr std::size_t kMaxFrameBody = 1u << 26;  // 64 MiB

// Frame the message, send it, and log the exact bytes. dir is the frame's
// direction of travel (the same value on both ends).
void send_message(Stream& stream, const Message& msg, Transcript* transcript,
                  Direction dir);

// Reads one frame, logs it, and decodes it. Oversized declared bodies are
// rejected before any allocation.
Message recv_message(Stream& stream, Transcript* transcript, Direction dir,
                     std::size_t max_body = kMaxFrameBody);

}  // namespace knot

#endif
