#pragma once

#include <charconv>
#include <span>
#include <stdexcept>
#include <string>
#include <system_error>

namespace shosim {

/// Shortest general-format rendering with 9 significant digits. Uses
/// std::to_chars, so the output never depends on the C locale.
inline std::string format_number(double value)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buf, end);
}

inline std::string format_list(std::span<const double> values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_number(values[i]);
    }
    return out;
}

} // namespace shosim
