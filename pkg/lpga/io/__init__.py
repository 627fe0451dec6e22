"""
Input and output (IO) of graphs, algebra elements, families, and reports.


Supported file formats
======================

All files are JSON. Policy and weight files may as well be written in YAML,
as they are read with :class:`aspecd.utils.Yaml` (and YAML is a superset of
JSON).

=========================  ====================================
Content                    Module
=========================  ====================================
Graph                      :mod:`lpga.io.graph_file`
Algebra element            :mod:`lpga.io.element_file`
Cuntz-Krieger family       :mod:`lpga.io.family_file`
Policies, weights          :mod:`lpga.io.mapping_file`
Reports and results        :mod:`lpga.io.exporter`
=========================  ====================================


General usage
=============

Each file format comes with an importer and an exporter class. Importers
are given a source and return the object read, exporters are given a target
and the object to write:

.. code-block::

    importer = lpga.io.graph_file.GraphImporter(source="a2.json")
    graph = importer.import_()

    exporter = lpga.io.graph_file.GraphExporter(target="copy.json")
    exporter.export_from(graph)

Malformed files raise :class:`lpga.exceptions.FileFormatError`.

"""
