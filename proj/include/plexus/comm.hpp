// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_COMM_HPP
#define PLEXUS_COMM_HPP

#include <cstddef>
#include <cstring>
#include <functional>
#include <type_traits>
#include <vector>

#include "plexus/error.hpp"

namespace plexus
{

//
// Collective message passing between logical ranks. The contract mirrors MPI: every rank
// calls each collective in the same order. The default transport (RunRanks) runs ranks as
// threads of one process in bulk-synchronous supersteps; a distributed-memory backend only
// needs to implement Exchange() and Barrier().
//
class Communicator
{
public:
  virtual ~Communicator() = default;

  virtual int Rank() const = 0;
  virtual int Size() const = 0;

  // Personalized all-to-all: send[r] is delivered to rank r, and the result holds at
  // index r what rank r sent to this rank.
  virtual std::vector<std::vector<std::byte>>
  Exchange(std::vector<std::vector<std::byte>> send) = 0;

  virtual void Barrier() = 0;
};

// Raised on ranks that were blocked in a collective when another rank failed.
class CommAborted : public Error
{
public:
  CommAborted() : Error("collective aborted because another rank failed") {}
};

// Runs body(comm) on `size` logical ranks and waits for all of them. If any rank throws,
// the others are released from their collectives and the first failure (lowest rank) is
// rethrown.
void RunRanks(int size, const std::function<void(Communicator &)> &body);

template <typename T>
std::vector<std::byte> PackBytes(const std::vector<T> &values)
{
  static_assert(std::is_trivially_copyable_v<T>);
  std::vector<std::byte> bytes(values.size() * sizeof(T));
  if (!values.empty())
  {
    std::memcpy(bytes.data(), values.data(), bytes.size());
  }
  return bytes;
}

template <typename T>
std::vector<T> UnpackBytes(const std::vector<std::byte> &bytes)
{
  static_assert(std::is_trivially_copyable_v<T>);
  Require(bytes.size() % sizeof(T) == 0, "message of {} bytes is not a whole number of items",
          bytes.size());
  std::vector<T> values(bytes.size() / sizeof(T));
  if (!values.empty())
  {
    std::memcpy(values.data(), bytes.data(), bytes.size());
  }
  return values;
}

template <typename T>
std::vector<std::vector<T>> AllToAll(Communicator &comm, const std::vector<std::vector<T>> &send)
{
  Require(static_cast<int>(send.size()) == comm.Size(), "all-to-all needs {} send buffers, got {}",
          comm.Size(), send.size());
  std::vector<std::vector<std::byte>> raw(send.size());
  for (std::size_t r = 0; r < send.size(); ++r)
  {
    raw[r] = PackBytes(send[r]);
  }
  auto received = comm.Exchange(std::move(raw));
  std::vector<std::vector<T>> out(received.size());
  for (std::size_t r = 0; r < received.size(); ++r)
  {
    out[r] = UnpackBytes<T>(received[r]);
  }
  return out;
}

template <typename T>
std::vector<T> AllGather(Communicator &comm, const T &value)
{
  std::vector<std::vector<T>> send(comm.Size(), std::vector<T>{value});
  const auto received = AllToAll(comm, send);
  std::vector<T> out;
  out.reserve(received.size());
  for (const auto &v : received)
  {
    out.push_back(v.at(0));
  }
  return out;
}

template <typename T>
std::vector<T> AllGatherV(Communicator &comm, const std::vector<T> &values)
{
  std::vector<std::vector<T>> send(comm.Size(), values);
  std::vector<T> out;
  for (const auto &v : AllToAll(comm, send))
  {
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

template <typename T>
T AllReduceSum(Communicator &comm, const T &value)
{
  T total{};
  for (const auto &v : AllGather(comm, value))
  {
    total += v;
  }
  return total;
}

template <typename T>
T AllReduceMax(Communicator &comm, const T &value)
{
  T best = value;
  for (const auto &v : AllGather(comm, value))
  {
    best = v > best ? v : best;
  }
  return best;
}

// Sum of `value` over ranks below this one.
template <typename T>
T ExclusiveScan(Communicator &comm, const T &value)
{
  const auto all = AllGather(comm, value);
  T prefix{};
  for (int r = 0; r < comm.Rank(); ++r)
  {
    prefix += all[r];
  }
  return prefix;
}

}  // namespace plexus

#endif  // PLEXUS_COMM_HPP
