// SPDX-License-Identifier: Apache-2.0
//
// CSV conventions shared by the library and the CLI: point decimal
// separator, 17 significant digits (lossless double round trip), header row
// always present. File writes go through a temp file plus atomic rename so
// a failed run never leaves partial output behind.
#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cohscat/error.hpp"

namespace cohscat {

inline std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::vector<std::string> split_csv_line(std::string const& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
    {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',')
    {
        out.emplace_back();
    }
    return out;
}

inline double parse_double(std::string const& s, std::string const& what)
{
    try
    {
        std::size_t pos = 0;
        double const v = std::stod(s, &pos);
        if (pos != s.size())
        {
            fail("csv.bad_number", "trailing characters in " + what + ": '"
                                       + s + "'");
        }
        return v;
    }
    catch (Error const&)
    {
        throw;
    }
    catch (std::exception const&)
    {
        fail("csv.bad_number", "cannot parse " + what + ": '" + s + "'");
    }
}

struct CsvDocument {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline CsvDocument read_csv(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        fail("csv.unreadable", "cannot open '" + path + "' for reading");
    }
    CsvDocument doc;
    std::string line;
    bool first = true;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
        {
            line.pop_back();
        }
        if (line.empty())
        {
            continue;
        }
        auto fields = split_csv_line(line);
        if (first)
        {
            doc.header = std::move(fields);
            first = false;
        }
        else
        {
            if (fields.size() != doc.header.size())
            {
                fail("csv.ragged_rows",
                     "row width does not match header in '" + path + "'");
            }
            doc.rows.push_back(std::move(fields));
        }
    }
    if (first)
    {
        fail("csv.empty", "'" + path + "' has no header row");
    }
    return doc;
}

// Write content to path via a sibling temp file and an atomic rename.
inline void write_file_atomic(std::string const& path,
                              std::string const& content)
{
    namespace fs = std::filesystem;
    fs::path const target(path);
    fs::path dir = target.parent_path();
    if (dir.empty())
    {
        dir = ".";
    }
    fs::path const tmp
        = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
        {
            fail("io.unwritable",
                 "cannot open '" + tmp.string() + "' for writing");
        }
        out << content;
        out.flush();
        if (!out)
        {
            std::error_code ec;
            fs::remove(tmp, ec);
            fail("io.write_failed", "failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
    {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        fail("io.rename_failed", "cannot move temp file onto '" + path
                                     + "': " + ec.message());
    }
}

}  // namespace cohscat
