# Generated by Django 5.2.6 on 2025-11-13 18:22

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('type_tag', models.CharField(max_length=16)),
                ('cutoff', models.PositiveIntegerField()),
                ('seed', models.IntegerField(default=0)),
                ('order_specs', models.JSONField(blank=True, default=list)),
                ('jobs', models.PositiveIntegerField(default=1)),
                ('status', models.CharField(choices=[('queued', 'Queued'), ('running', 'Running'), ('passed', 'Passed'), ('failed', 'Failed')], default='queued', max_length=16)),
                ('report', models.JSONField(blank=True, default=dict)),
                ('violation_count', models.PositiveIntegerField(default=0)),
                ('last_error', models.TextField(blank=True, default='')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('started_at', models.DateTimeField(blank=True, null=True)),
                ('finished_at', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [models.Index(fields=['status', 'created_at'], name='affinepbw_v_status_f42289_idx'), models.Index(fields=['type_tag'], name='affinepbw_v_type_ta_6db813_idx')],
            },
        ),
    ]
