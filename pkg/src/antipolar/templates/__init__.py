from string import Template

# static page, no scripts
SWEEP_PAGE = Template(
    """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>$title</title>
<style>
table { border-collapse: collapse; font-family: monospace; }
th, td { border: 1px solid #999; padding: 2px 6px; text-align: right; }
tr.equality td { background: #eef7ee; }
tr.violation td { background: #f7dede; }
</style>
</head>
<body>
<h1>$title</h1>
<p>$caption</p>
<table>
<thead>
<tr>$header</tr>
</thead>
<tbody>
$rows
</tbody>
</table>
<h2>Summary</h2>
<table>
<tbody>
$summary
</tbody>
</table>
</body>
</html>
"""
)
