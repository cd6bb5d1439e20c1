#include "knot/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

#include "knot/errors.hpp"

namespace knot {

namespace {

struct PipeChannel {
  std::mutex mutex;
  std::condition_variable ready;
  std::deque<std::uint8_t> buffer;
  bool closed = false;
};

class PipeEnd final : public Stream {
 public:
  PipeEnd(std::shared_ptr<PipeChannel> out, std::shared_ptr<PipeChannel> in)
      : out_(std::move(out)), in_(std::move(in)) {}

  ~PipeEnd() override {
    std::lock_guard<std::mutex> lock(out_->mutex);
    out_->closed = true;
    out_->ready.notify_all();
  }

  void write_all(const std::uint8_t* data, std::size_t len) override {
    std::lock_guard<std::mutex> lock(out_->mutex);
    if (out_->closed) {
      throw Error(Errc::io, "pipe closed");
    }
    out_->buffer.insert(out_->buffer.end(), data, data + len);
    out_->ready.notify_all();
  }

  void read_exact(std::uint8_t* data, std::size_t len) override {
    std::unique_lock<std::mutex> lock(in_->mutex);
    for (std::size_t i = 0; i < len; ++i) {
      in_->ready.wait(lock,
                      [this] { return !in_->buffer.empty() || in_->closed; });
      if (in_->buffer.empty()) {
        throw Error(Errc::io, "pipe closed before full read");
      }
      data[i] = in_->buffer.front();
      in_->buffer.pop_front();
    }
  }

 private:
  std::shared_ptr<PipeChannel> out_;
  std::shared_ptr<PipeChannel> in_;
};

[[noreturn]] void throw_errno(const std::string& what) {
  throw Error(Errc::io, what + ": " + std::strerror(errno));
}

}  // namespace

std::pair<std::unique_ptr<Stream>, std::unique_ptr<Stream>> make_pipe() {
  auto a_to_b = std::make_shared<PipeChannel>();
  auto b_to_a = std::make_shared<PipeChannel>();
  return {std::make_unique<PipeEnd>(a_to_b, b_to_a),
          std::make_unique<PipeEnd>(b_to_a, a_to_b)};
}

TcpStream::TcpStream(int fd) : fd_(fd) {
  int one = 1;
  setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpStream::~TcpStream() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpStream> TcpStream::connect(const std::string& host,
                                              std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* results = nullptr;
  const std::string service = std::to_string(port);
  if (getaddrinfo(host.c_str(), service.c_str(), &hints, &results) != 0) {
    throw Error(Errc::io, "cannot resolve host: " + host);
  }
  int fd = -1;
  for (addrinfo* it = results; it != nullptr; it = it->ai_next) {
    fd = ::socket(it->ai_family, it->ai_socktype, it->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, it->ai_addr, it->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  freeaddrinfo(results);
  if (fd < 0) {
    throw Error(Errc::io, "cannot connect to " + host + ":" + service);
  }
  return std::make_unique<TcpStream>(fd);
}

void TcpStream::write_all(const std::uint8_t* data, std::size_t len) {
  std::size_t sent = 0;
  while (sent < len) {
    const ssize_t n = ::send(fd_, data + sent, len - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

void TcpStream::read_exact(std::uint8_t* data, std::size_t len) {
  std::size_t got = 0;
  while (got < len) {
    const ssize_t n = ::recv(fd_, data + got, len - got, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_errno("recv");
    }
    if (n == 0) {
      throw Error(Errc::io, "connection closed before full read");
    }
    got += static_cast<std::size_t>(n);
  }
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port)
    : fd_(-1), port_(0) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* results = nullptr;
  const std::string service = std::to_string(port);
  if (getaddrinfo(host.empty() ? nullptr : host.c_str(), service.c_str(),
                  &hints, &results) != 0) {
    throw Error(Errc::io, "cannot resolve listen address: " + host);
  }
  for (addrinfo* it = results; it != nullptr; it = it->ai_next) {
    fd_ = ::socket(it->ai_family, it->ai_socktype, it->ai_protocol);
    if (fd_ < 0) continue;
    int one = 1;
    setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd_, it->ai_addr, it->ai_addrlen) == 0 &&
        ::listen(fd_, 1) == 0) {
      sockaddr_storage bound{};
      socklen_t len = sizeof(bound);
      if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) == 0) {
        if (bound.ss_family == AF_INET) {
          port_ = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
        } else if (bound.ss_family == AF_INET6) {
          port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
        }
      }
      break;
    }
    ::close(fd_);
    fd_ = -1;
  }
  freeaddrinfo(results);
  if (fd_ < 0) {
    throw Error(Errc::io, "cannot listen on " + host + ":" + service);
  }
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpStream> TcpListener::accept() {
  while (true) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      return std::make_unique<TcpStream>(fd);
    }
    if (errno != EINTR) throw_errno("accept");
  }
}

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw Error(Errc::param, "endpoint must be host:port, got: " + text);
  }
  const std::string host = text.substr(0, colon);
  const std::string port_text = text.substr(colon + 1);
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(port_text, &used);
    if (used != port_text.size()) throw std::invalid_argument(port_text);
  } catch (const std::exception&) {
    throw Error(Errc::param, "invalid port: " + port_text);
  }
  if (port > 65535) {
    throw Error(Errc::param, "port out of range: " + port_text);
  }
  return {host, static_cast<std::uint16_t>(port)};
}

void send_message(Stream& stream, const Message& msg, Transcript* transcript,
                  Direction dir) {
  std::vector<std::uint8_t> frame = encode(msg);
  stream.write_all(frame.data(), frame.size());
  if (transcript != nullptr) {
    transcript->append(dir, std::move(frame));
  }
}

Message recv_message(Stream& stream, Transcript* transcript, Direction dir,
                     std::size_t max_body) {
  std::vector<std::uint8_t> frame(10);
  stream.read_exact(frame.data(), frame.size());
  // Pre-screen the header so a bogus length cannot force a huge allocation;
  // decode() re-validates everything on the assembled frame.
  if (!std::equal(kMagic.begin(), kMagic.end(), frame.begin())) {
    throw Error(Errc::wire_bad_magic, "bad frame magic");
  }
  const std::size_t body_len = (std::size_t{frame[6]} << 24) |
                               (std::size_t{frame[7]} << 16) |
                               (std::size_t{frame[8]} << 8) |
                               std::size_t{frame[9]};
  if (body_len > max_body) {
    throw Error(Errc::wire_oversize, "frame body exceeds the size cap");
  }
  frame.resize(10 + body_len);
  stream.read_exact(frame.data() + 10, body_len);
  Message msg = decode(frame);
  if (transcript != nullptr) {
    transcript->append(dir, std::move(frame));
  }
  return msg;
}

}  // namespace knot
